#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "taghort/errors.hpp"
#include "taghort/metrics.hpp"
#include "taghort/model_selection.hpp"
#include "taghort/pipeline.hpp"
#include "taghort/preprocess.hpp"
#include "taghort/repid.hpp"
#include "taghort/solver.hpp"
#include "taghort/synthetic.hpp"
#include "taghort/types.hpp"

namespace py = pybind11;
using namespace taghort;

namespace {

Matrix matrix_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
    Matrix m(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)));
    if (!m.empty()) std::memcpy(m.data().data(), arr.data(), sizeof(double) * m.data().size());
    return m;
}

py::array_t<double> matrix_to_array(const Matrix& m) {
    py::array_t<double> arr({m.rows(), m.cols()});
    if (!m.empty())
        std::memcpy(arr.mutable_data(), m.data().data(), sizeof(double) * m.data().size());
    return arr;
}

TagMatrix tags_from_array(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr,
                          std::vector<std::string> dictionary) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-d array");
    const auto n = static_cast<std::size_t>(arr.shape(0));
    const auto r = static_cast<std::size_t>(arr.shape(1));
    std::vector<std::uint8_t> values(n * r);
    if (n * r) std::memcpy(values.data(), arr.data(), n * r);
    return TagMatrix(n, r, std::move(values), std::move(dictionary));
}

py::array_t<std::uint8_t> tags_to_array(const TagMatrix& D) {
    py::array_t<std::uint8_t> arr({D.samples(), D.tags});
    if (!D.values.empty())
        std::memcpy(arr.mutable_data(), D.values.data(), D.values.size());
    return arr;
}

} // namespace

PYBIND11_MODULE(_taghort, m) {
    m.doc() = "Tag-described cohort explanations over local feature importances";
    m.attr("__version__") = kToolVersion;

    py::register_exception<Error>(m, "TaghortError");

    py::class_<ImportanceMatrix>(m, "ImportanceMatrix")
        .def(py::init([](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
                         std::vector<std::string> names) {
                 return ImportanceMatrix(matrix_from_array(values), std::move(names));
             }),
             py::arg("values"), py::arg("feature_names"))
        .def_property_readonly("values",
                               [](const ImportanceMatrix& w) { return matrix_to_array(w.values); })
        .def_readonly("feature_names", &ImportanceMatrix::feature_names)
        .def_property_readonly("n", &ImportanceMatrix::samples)
        .def_property_readonly("m", &ImportanceMatrix::features);

    py::class_<TagMatrix>(m, "TagMatrix")
        .def(py::init([](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& values,
                         std::vector<std::string> dictionary) {
                 return tags_from_array(values, std::move(dictionary));
             }),
             py::arg("values"), py::arg("dictionary"))
        .def_property_readonly("values", [](const TagMatrix& d) { return tags_to_array(d); })
        .def_readonly("dictionary", &TagMatrix::dictionary)
        .def_property_readonly("n", &TagMatrix::samples)
        .def_property_readonly("r", [](const TagMatrix& d) { return d.tags; });

    py::class_<Partition>(m, "Partition")
        .def(py::init<std::vector<int>, int>(), py::arg("assignment"), py::arg("k"))
        .def_property_readonly("assignment", &Partition::assignment)
        .def_property_readonly("k", &Partition::k)
        .def("cohort_sizes", &Partition::cohort_sizes)
        .def("__len__", &Partition::size)
        .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; });

    m.def("canonicalize",
          [](const std::vector<int>& assignment) { return canonicalize(assignment); },
          py::arg("assignment"), "Relabel an assignment by order of first occurrence.");
    m.def("is_canonical", &is_canonical, py::arg("assignment"));
    m.def("validate_inputs", &validate_inputs, py::arg("W"), py::arg("D"));

    py::class_<CohortModel>(m, "CohortModel")
        .def_readonly("partition", &CohortModel::partition)
        .def_readonly("tag_sets", &CohortModel::tag_sets)
        .def_property_readonly("cohort_means",
                               [](const CohortModel& c) { return matrix_to_array(c.cohort_means); })
        .def_readonly("descriptiveness", &CohortModel::descriptiveness)
        .def_readonly("compactness", &CohortModel::compactness)
        .def_readonly("tag_count", &CohortModel::tag_count)
        .def_readonly("cohort_sizes", &CohortModel::cohort_sizes)
        .def_property_readonly("k", &CohortModel::k);

    py::enum_<SolveMode>(m, "SolveMode")
        .value("EXACT", SolveMode::Exact)
        .value("HEURISTIC", SolveMode::Heuristic)
        .value("AUTO", SolveMode::Auto);

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("mode", &SolverOptions::mode)
        .def_readwrite("time_limit", &SolverOptions::time_limit)
        .def_readwrite("exact_sample_limit", &SolverOptions::exact_sample_limit)
        .def_readwrite("restarts", &SolverOptions::restarts)
        .def_readwrite("rng_seed", &SolverOptions::rng_seed)
        .def_readwrite("compactness_tolerance", &SolverOptions::compactness_tolerance);

    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("model", &SolveResult::model)
        .def_readonly("proven_optimal", &SolveResult::proven_optimal)
        .def_readonly("phase1_descriptiveness", &SolveResult::phase1_descriptiveness)
        .def_readonly("timed_out", &SolveResult::timed_out)
        .def_readonly("nodes_explored", &SolveResult::nodes_explored)
        .def_readonly("wall_time", &SolveResult::wall_time);

    m.def("compactness", &compactness, py::arg("W"), py::arg("P"));
    m.def("descriptiveness", &descriptiveness, py::arg("D"), py::arg("P"));
    m.def("derive_tag_sets", &derive_tag_sets, py::arg("D"), py::arg("P"));
    m.def("build_cohort_model", &build_cohort_model, py::arg("W"), py::arg("D"), py::arg("P"));
    m.def("solve", &solve, py::arg("W"), py::arg("D"), py::arg("k"),
          py::arg("options") = SolverOptions{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<MatchSet>(m, "MatchSet")
        .def_readonly("matches", &MatchSet::matches)
        .def_readonly("fallback_count", &MatchSet::fallback_count)
        .def_readonly("fallback_used", &MatchSet::fallback_used);

    py::class_<PredictionErrorStats>(m, "PredictionErrorStats")
        .def_readonly("sum", &PredictionErrorStats::sum)
        .def_readonly("mean", &PredictionErrorStats::mean)
        .def_readonly("fallback_count", &PredictionErrorStats::fallback_count)
        .def_readonly("fallback_rate", &PredictionErrorStats::fallback_rate);

    m.def("match_cohorts", &match_cohorts, py::arg("model"), py::arg("D_eval"));
    m.def("importance_prediction_error", &importance_prediction_error, py::arg("model"),
          py::arg("W_eval"), py::arg("D_eval"));
    m.def("importance_prediction_error_stats", &importance_prediction_error_stats,
          py::arg("model"), py::arg("W_eval"), py::arg("D_eval"));
    m.def("model_global_mean", &model_global_mean, py::arg("model"));

    py::class_<EvaluationEntry>(m, "EvaluationEntry")
        .def_readonly("k", &EvaluationEntry::k)
        .def_readonly("compactness", &EvaluationEntry::compactness)
        .def_readonly("descriptiveness", &EvaluationEntry::descriptiveness)
        .def_readonly("cohort_sizes", &EvaluationEntry::cohort_sizes)
        .def_property_readonly("cohort_means",
                               [](const EvaluationEntry& e) { return matrix_to_array(e.cohort_means); })
        .def_property_readonly("mean_differences",
                               [](const EvaluationEntry& e) { return matrix_to_array(e.mean_differences); })
        .def_readonly("prediction_error_sum", &EvaluationEntry::prediction_error_sum)
        .def_readonly("prediction_error_mean", &EvaluationEntry::prediction_error_mean)
        .def_readonly("fallback_rate", &EvaluationEntry::fallback_rate);

    m.def("evaluate_model", &evaluate_model, py::arg("model"), py::arg("W"), py::arg("D"));

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("k_values", &SweepConfig::k_values)
        .def_readwrite("folds", &SweepConfig::folds)
        .def_readwrite("rng_seed", &SweepConfig::rng_seed)
        .def_readwrite("solver", &SweepConfig::solver)
        .def_readwrite("threads", &SweepConfig::threads);

    py::class_<SweepCell>(m, "SweepCell")
        .def_readonly("k", &SweepCell::k)
        .def_readonly("fold", &SweepCell::fold)
        .def_readonly("train_compactness", &SweepCell::train_compactness)
        .def_readonly("train_descriptiveness", &SweepCell::train_descriptiveness)
        .def_readonly("val_error_sum", &SweepCell::val_error_sum)
        .def_readonly("val_error_mean", &SweepCell::val_error_mean)
        .def_readonly("fallback_rate", &SweepCell::fallback_rate)
        .def_readonly("proven_optimal", &SweepCell::proven_optimal)
        .def_readonly("wall_time", &SweepCell::wall_time);

    py::class_<SweepSummary>(m, "SweepSummary")
        .def_readonly("k", &SweepSummary::k)
        .def_readonly("mean_val_error", &SweepSummary::mean_val_error)
        .def_readonly("std_val_error", &SweepSummary::std_val_error)
        .def_readonly("mean_train_compactness", &SweepSummary::mean_train_compactness)
        .def_readonly("mean_train_descriptiveness", &SweepSummary::mean_train_descriptiveness)
        .def_readonly("mean_fallback_rate", &SweepSummary::mean_fallback_rate)
        .def_readonly("all_proven_optimal", &SweepSummary::all_proven_optimal);

    py::class_<SweepReport>(m, "SweepReport")
        .def_readonly("cells", &SweepReport::cells)
        .def_readonly("per_k", &SweepReport::per_k)
        .def_readonly("selected_k", &SweepReport::selected_k);

    m.def("make_folds", &make_folds, py::arg("n"), py::arg("folds"), py::arg("seed"));
    m.def("sweep", &sweep, py::arg("W"), py::arg("D"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<TreeOptions>(m, "TreeOptions")
        .def(py::init<>())
        .def_readwrite("min_leaf_size", &TreeOptions::min_leaf_size);

    py::class_<TreeLeaf>(m, "TreeLeaf")
        .def_readonly("samples", &TreeLeaf::samples)
        .def_readonly("mean", &TreeLeaf::mean)
        .def_readonly("path", &TreeLeaf::path);

    py::class_<TreeCohortModel>(m, "TreeCohortModel")
        .def_readonly("leaves", &TreeCohortModel::leaves)
        .def_readonly("requested_k", &TreeCohortModel::requested_k)
        .def_readonly("early_stop", &TreeCohortModel::early_stop)
        .def_property_readonly("k", &TreeCohortModel::k);

    m.def("fit_tree", &fit_tree, py::arg("W"), py::arg("D"), py::arg("k"),
          py::arg("options") = TreeOptions{});
    m.def("tree_predict_importance",
          [](const TreeCohortModel& model, const TagMatrix& D_eval) {
              return matrix_to_array(tree_predict_importance(model, D_eval));
          },
          py::arg("model"), py::arg("D_eval"));
    m.def("tree_prediction_error", &tree_prediction_error, py::arg("model"), py::arg("W_eval"),
          py::arg("D_eval"));

    py::enum_<TagRuleKind>(m, "TagRuleKind")
        .value("QUANTILE", TagRuleKind::Quantile)
        .value("ONEHOT", TagRuleKind::OneHot)
        .value("PASSTHROUGH", TagRuleKind::Passthrough);

    py::class_<FeatureTable>(m, "FeatureTable")
        .def(py::init<>())
        .def("add_continuous", &FeatureTable::add_continuous, py::arg("name"), py::arg("values"))
        .def("add_categorical", &FeatureTable::add_categorical, py::arg("name"), py::arg("values"))
        .def("add_binary", &FeatureTable::add_binary, py::arg("name"), py::arg("values"))
        .def_property_readonly("n", &FeatureTable::rows);

    py::class_<TagDerivationConfig>(m, "TagDerivationConfig")
        .def(py::init<>())
        .def("add_quantile", &TagDerivationConfig::add_quantile, py::arg("column"), py::arg("q"))
        .def("add_onehot", &TagDerivationConfig::add_onehot, py::arg("column"))
        .def("add_passthrough", &TagDerivationConfig::add_passthrough, py::arg("column"));

    m.def("quantile_edges", &quantile_edges, py::arg("values"), py::arg("q"));
    m.def("derive_tags", &derive_tags, py::arg("table"), py::arg("config"));

    py::class_<AxisRange>(m, "AxisRange")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_readwrite("lo", &AxisRange::lo)
        .def_readwrite("hi", &AxisRange::hi);

    py::class_<RegionSpec>(m, "RegionSpec")
        .def(py::init<>())
        .def_readwrite("axis1", &RegionSpec::axis1)
        .def_readwrite("axis2", &RegionSpec::axis2)
        .def_readwrite("weights", &RegionSpec::weights);

    py::class_<TwoRegionSpec>(m, "TwoRegionSpec")
        .def(py::init<>())
        .def_static("defaults", &TwoRegionSpec::defaults)
        .def_readwrite("n_per_region", &TwoRegionSpec::n_per_region)
        .def_readwrite("region_low", &TwoRegionSpec::region_low)
        .def_readwrite("region_high", &TwoRegionSpec::region_high)
        .def_readwrite("threshold", &TwoRegionSpec::threshold)
        .def_readwrite("noise_level", &TwoRegionSpec::noise_level)
        .def_readwrite("rng_seed", &TwoRegionSpec::rng_seed);

    py::class_<TwoRegionData>(m, "TwoRegionData")
        .def_readonly("features", &TwoRegionData::features)
        .def_readonly("importances", &TwoRegionData::importances)
        .def_readonly("region_labels", &TwoRegionData::region_labels);

    m.def("generate_two_region", &generate, py::arg("spec"));
}
