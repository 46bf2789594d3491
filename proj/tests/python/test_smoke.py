"""Smoke tests for the python bindings."""

import numpy as np
import pytest

import taghort as tg


def separable_instance():
    W = tg.ImportanceMatrix(
        np.array([[0.0, 0.0], [0.2, 0.1], [5.0, 5.0], [5.2, 4.9], [5.1, 5.2], [0.1, 0.3]]),
        ["f1", "f2"],
    )
    D = tg.TagMatrix(
        np.array(
            [[1, 0, 1], [1, 0, 1], [0, 1, 1], [0, 1, 1], [0, 1, 0], [1, 0, 0]],
            dtype=np.uint8,
        ),
        ["low", "high", "extra"],
    )
    return W, D


def test_version():
    assert tg.__version__


def test_solve_recovers_separable_groups():
    W, D = separable_instance()
    result = tg.solve(W, D, 2)
    assert result.proven_optimal
    assert result.model.partition.assignment == [1, 1, 2, 2, 2, 1]
    assert result.model.tag_sets == [[0], [1]]
    assert result.model.compactness >= 0.0


def test_canonicalize_and_partition():
    assert tg.canonicalize([3, 1, 3, 2]).assignment == [1, 2, 1, 3]
    with pytest.raises(tg.TaghortError):
        tg.Partition([1, 1], 2)


def test_quantile_edges_and_tag_derivation():
    assert tg.quantile_edges(list(range(1, 9)), 4) == [2.75, 4.5, 6.25]
    table = tg.FeatureTable()
    table.add_continuous("age", [20.0, 30.0, 40.0, 50.0])
    table.add_binary("smoker", [1.0, 0.0, 0.0, 1.0])
    config = tg.TagDerivationConfig()
    config.add_quantile("age", 2)
    config.add_passthrough("smoker")
    tags = tg.derive_tags(table, config)
    assert tags.dictionary == ["age<35", "35<=age", "smoker=yes", "smoker=no"]
    assert tags.values.sum(axis=1).tolist() == [2, 2, 2, 2]


def test_metrics_roundtrip():
    W, D = separable_instance()
    model = tg.solve(W, D, 2).model
    stats = tg.importance_prediction_error_stats(model, W, D)
    assert stats.sum >= 0.0
    assert stats.fallback_count == 0
    entry = tg.evaluate_model(model, W, D)
    assert entry.cohort_means.shape == (2, 2)


def test_sweep_and_tree():
    spec = tg.TwoRegionSpec.defaults()
    spec.n_per_region = 20
    spec.rng_seed = 3
    data = tg.generate_two_region(spec)
    config = tg.TagDerivationConfig()
    config.add_quantile("axis1", 2)
    config.add_quantile("axis2", 2)
    tags = tg.derive_tags(data.features, config)

    options = tg.SolverOptions()
    options.mode = tg.SolveMode.EXACT
    fit = tg.solve(data.importances, tags, 2, options)
    got = fit.model.partition.assignment
    assert got == list(data.region_labels)  # low region appears first

    tree = tg.fit_tree(data.importances, tags, 2)
    assert tree.k == 2
    predictions = tg.tree_predict_importance(tree, tags)
    assert predictions.shape == (40, 2)

    sweep_config = tg.SweepConfig()
    sweep_config.k_values = [1, 2]
    sweep_config.folds = 4
    solver = tg.SolverOptions()
    solver.mode = tg.SolveMode.HEURISTIC
    sweep_config.solver = solver
    report = tg.sweep(data.importances, tags, sweep_config)
    assert report.selected_k in (1, 2)
    assert len(report.cells) == 8
