#pragma once

#include <cstdint>
#include <vector>

#include "taghort/solver.hpp"
#include "taghort/types.hpp"

namespace taghort {

struct SweepConfig {
    std::vector<int> k_values;
    int folds = 5;
    std::uint64_t rng_seed = 0;
    SolverOptions solver;
    int threads = 1; // independent (k, fold) runs may execute concurrently
};

struct SweepCell {
    int k = 0;
    int fold = 0;
    double train_compactness = 0.0;
    int train_descriptiveness = 0;
    double val_error_sum = 0.0;
    double val_error_mean = 0.0; // per validation sample, comparable across folds
    double fallback_rate = 0.0;
    bool proven_optimal = false;
    double wall_time = 0.0;
};

struct SweepSummary {
    int k = 0;
    double mean_val_error = 0.0; // mean over folds of val_error_mean
    double std_val_error = 0.0;  // sample standard deviation over folds
    double mean_train_compactness = 0.0;
    double mean_train_descriptiveness = 0.0;
    double mean_fallback_rate = 0.0;
    bool all_proven_optimal = false;
};

struct SweepReport {
    std::vector<SweepCell> cells;       // one per (k, fold), k-major order
    std::vector<SweepSummary> per_k;    // ascending k
    int selected_k = 0;                 // argmin mean_val_error, ties to smaller k
};

// Disjoint cover of 0..n-1 into `folds` validation folds, deterministic in the
// seed. Fold sizes differ by at most one.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int folds,
                                                 std::uint64_t seed);

// Cross-validated k sweep: for every candidate k and fold, fit on the training
// fold and score importance prediction error on the held-out fold.
SweepReport sweep(const ImportanceMatrix& W, const TagMatrix& D, const SweepConfig& config);

} // namespace taghort
