"""Tag-described cohort explanations over local feature importances."""

from ._taghort import *  # noqa: F401,F403
from ._taghort import __version__  # noqa: F401
