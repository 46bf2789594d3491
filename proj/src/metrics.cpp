#include "taghort/metrics.hpp"

#include <algorithm>

#include "taghort/bitrows.hpp"
#include "taghort/errors.hpp"
#include "taghort/solver.hpp"

namespace taghort {

namespace {

// Cohort descriptions as packed bit rows, one per cohort.
PackedTags pack_tag_sets(const CohortModel& model) {
    PackedTags sets(static_cast<std::size_t>(model.k()), model.tag_count);
    for (int t = 0; t < model.k(); ++t)
        for (int p : model.tag_sets[static_cast<std::size_t>(t)])
            sets.set(static_cast<std::size_t>(t), static_cast<std::size_t>(p));
    return sets;
}

void check_dictionary(const CohortModel& model, const TagMatrix& D_eval) {
    if (D_eval.tags != model.tag_count)
        throw DictionaryMismatch("evaluation tags have " + std::to_string(D_eval.tags) +
                                 " columns, model was trained with " +
                                 std::to_string(model.tag_count));
}

} // namespace

MatchSet match_cohorts(const CohortModel& model, const TagMatrix& D_eval) {
    check_dictionary(model, D_eval);
    const PackedTags rows(D_eval);
    const PackedTags sets = pack_tag_sets(model);
    MatchSet out;
    out.matches.resize(D_eval.samples());
    for (std::size_t i = 0; i < D_eval.samples(); ++i) {
        auto& z = out.matches[i];
        for (int t = 0; t < model.k(); ++t)
            if (bits_subset(sets.row(static_cast<std::size_t>(t)), rows.row(i), rows.words()))
                z.push_back(t + 1);
        if (z.empty()) {
            ++out.fallback_count;
            out.fallback_used = true;
        }
    }
    return out;
}

std::vector<double> model_global_mean(const CohortModel& model) {
    const std::size_t m = model.features();
    std::size_t n = 0;
    for (int size : model.cohort_sizes) n += static_cast<std::size_t>(size);
    std::vector<double> mean(m, 0.0);
    for (int t = 0; t < model.k(); ++t) {
        // Weighted by n_t/n so a single cohort reproduces its mean exactly.
        const double w = static_cast<double>(model.cohort_sizes[static_cast<std::size_t>(t)]) /
                         static_cast<double>(n);
        for (std::size_t j = 0; j < m; ++j)
            mean[j] += model.cohort_means(static_cast<std::size_t>(t), j) * w;
    }
    return mean;
}

PredictionErrorStats importance_prediction_error_stats(const CohortModel& model,
                                                       const ImportanceMatrix& W_eval,
                                                       const TagMatrix& D_eval) {
    check_dictionary(model, D_eval);
    if (W_eval.samples() != D_eval.samples())
        throw DimensionMismatch("evaluation importance and tag row counts disagree");
    if (W_eval.features() != model.features())
        throw DimensionMismatch("evaluation importance has " + std::to_string(W_eval.features()) +
                                " columns, model means have " + std::to_string(model.features()));

    const MatchSet matches = match_cohorts(model, D_eval);
    const std::vector<double> fallback = model_global_mean(model);
    const std::size_t m = model.features();

    PredictionErrorStats stats;
    std::vector<double> prediction(m);
    for (std::size_t i = 0; i < W_eval.samples(); ++i) {
        const auto& z = matches.matches[i];
        if (z.empty()) {
            prediction = fallback;
            ++stats.fallback_count;
        } else {
            std::fill(prediction.begin(), prediction.end(), 0.0);
            for (int t : z)
                for (std::size_t j = 0; j < m; ++j)
                    prediction[j] += model.cohort_means(static_cast<std::size_t>(t - 1), j);
            for (std::size_t j = 0; j < m; ++j) prediction[j] /= static_cast<double>(z.size());
        }
        stats.sum += squared_distance(W_eval.values.row(i), prediction.data(), m);
    }
    const std::size_t l = W_eval.samples();
    stats.mean = l == 0 ? 0.0 : stats.sum / static_cast<double>(l);
    stats.fallback_rate = l == 0 ? 0.0 : static_cast<double>(stats.fallback_count) /
                                             static_cast<double>(l);
    return stats;
}

double importance_prediction_error(const CohortModel& model, const ImportanceMatrix& W_eval,
                                   const TagMatrix& D_eval) {
    return importance_prediction_error_stats(model, W_eval, D_eval).sum;
}

EvaluationEntry evaluate_model(const CohortModel& model, const ImportanceMatrix& W,
                               const TagMatrix& D) {
    validate_inputs(W, D);
    if (W.samples() != model.partition.size())
        throw DimensionMismatch("evaluation data must be the data the model was fitted on");

    EvaluationEntry entry;
    entry.k = model.k();
    entry.compactness = model.compactness;
    entry.descriptiveness = model.descriptiveness;
    entry.cohort_sizes = model.cohort_sizes;
    entry.cohort_means = model.cohort_means;

    const std::vector<double> global = model_global_mean(model);
    const std::size_t m = model.features();
    entry.mean_differences = Matrix(static_cast<std::size_t>(model.k()), m);
    for (int t = 0; t < model.k(); ++t)
        for (std::size_t j = 0; j < m; ++j)
            entry.mean_differences(static_cast<std::size_t>(t), j) =
                model.cohort_means(static_cast<std::size_t>(t), j) - global[j];

    const PredictionErrorStats stats = importance_prediction_error_stats(model, W, D);
    entry.prediction_error_sum = stats.sum;
    entry.prediction_error_mean = stats.mean;
    entry.fallback_rate = stats.fallback_rate;
    return entry;
}

} // namespace taghort
