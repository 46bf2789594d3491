#pragma once

#include <vector>

#include "taghort/types.hpp"

namespace taghort {

// For each evaluation sample, the cohorts whose full tag description the
// sample satisfies. Cohort descriptions may overlap, so a sample can match
// several cohorts, or none.
struct MatchSet {
    std::vector<std::vector<int>> matches; // per sample, 1-based cohort ids
    std::size_t fallback_count = 0;        // samples matching no cohort
    bool fallback_used = false;
};

MatchSet match_cohorts(const CohortModel& model, const TagMatrix& D_eval);

struct PredictionErrorStats {
    double sum = 0.0;  // total squared error
    double mean = 0.0; // per-sample
    std::size_t fallback_count = 0;
    double fallback_rate = 0.0;
};

// Squared error of predicting each evaluation row as the average of the mean
// importances of all cohorts the sample matches. Samples matching no cohort
// are predicted with the training global mean importance and counted in the
// fallback statistics.
PredictionErrorStats importance_prediction_error_stats(const CohortModel& model,
                                                       const ImportanceMatrix& W_eval,
                                                       const TagMatrix& D_eval);

double importance_prediction_error(const CohortModel& model,
                                   const ImportanceMatrix& W_eval,
                                   const TagMatrix& D_eval);

// Training global mean importance, reconstructed from cohort means weighted
// by relative cohort size.
std::vector<double> model_global_mean(const CohortModel& model);

struct EvaluationEntry {
    int k = 0;
    double compactness = 0.0;
    int descriptiveness = 0;
    std::vector<int> cohort_sizes;
    Matrix cohort_means;     // k x m
    Matrix mean_differences; // cohort mean minus model global mean, k x m
    double prediction_error_sum = 0.0;
    double prediction_error_mean = 0.0;
    double fallback_rate = 0.0;
};

// Full per-model report on a dataset; W and D must be the data the model was
// fitted on (row counts must match the partition).
EvaluationEntry evaluate_model(const CohortModel& model, const ImportanceMatrix& W,
                               const TagMatrix& D);

} // namespace taghort
