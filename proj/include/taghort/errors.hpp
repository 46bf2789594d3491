#pragma once

#include <stdexcept>
#include <string>

namespace taghort {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row/column counts of paired inputs disagree.
struct DimensionMismatch : Error { using Error::Error; };

// NaN or infinity where a finite value is required.
struct NonFinite : Error { using Error::Error; };

// Tag or binary-column entry outside {0, 1}.
struct NonBinary : Error { using Error::Error; };

// A cohort label in 1..k has no members, or the assignment is empty.
struct EmptyCohort : Error { using Error::Error; };

// Descriptor rule names a column that does not exist.
struct UnknownColumn : Error { using Error::Error; };

// Descriptor rule kind is incompatible with the column kind.
struct KindMismatch : Error { using Error::Error; };

// Quantile binning collapsed to fewer than two bins (constant column).
struct DegenerateBins : Error { using Error::Error; };

// Evaluation tags do not share the training tag dictionary.
struct DictionaryMismatch : Error { using Error::Error; };

// Requested cohort count exceeds the number of samples.
struct InfeasibleK : Error { using Error::Error; };

// Requested k exceeds what the data or fold sizes admit.
struct KTooLarge : Error { using Error::Error; };

// Malformed input file; message carries row/column diagnostics.
struct ParseError : Error { using Error::Error; };

} // namespace taghort
