#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "taghort/types.hpp"

namespace taghort {

enum class SolveMode { Exact, Heuristic, Auto };

struct SolverOptions {
    SolveMode mode = SolveMode::Auto;
    std::optional<double> time_limit; // seconds; absent = unlimited
    int exact_sample_limit = 30;      // Auto switches to Heuristic above this
    int restarts = 16;                // heuristic multi-restart count
    std::uint64_t rng_seed = 0;
    double compactness_tolerance = 1e-9;
};

struct SolveResult {
    CohortModel model;
    bool proven_optimal = false;   // both phases ran to exhaustion
    int phase1_descriptiveness = 0;
    bool timed_out = false;
    std::uint64_t nodes_explored = 0;
    double wall_time = 0.0; // seconds
};

// Total within-cohort sum of pairwise squared Euclidean distances between
// importance rows, each unordered pair counted once. Uses the per-cohort
// identity  sum_{i<j} |w_i - w_j|^2 = n_t * sum|w_i|^2 - |sum w_i|^2.
double compactness(const ImportanceMatrix& W, const Partition& P);

// Minimum over cohorts of the number of tags shared by every member.
int descriptiveness(const TagMatrix& D, const Partition& P);

// Per cohort, the exact set of tags satisfied by all members (bitwise AND of
// member rows). Members therefore satisfy every listed tag, and for every tag
// not listed some member lacks it.
std::vector<std::vector<int>> derive_tag_sets(const TagMatrix& D, const Partition& P);

// Fills in tag sets, cohort means and both objectives for a given partition.
CohortModel build_cohort_model(const ImportanceMatrix& W, const TagMatrix& D,
                               const Partition& P);

// Two-phase descriptive clustering: first maximize descriptiveness (phase 1),
// then minimize compactness among partitions whose descriptiveness is at least
// the phase-1 optimum. Exact mode is a depth-first branch-and-bound over
// canonical assignments; heuristic mode is multi-restart greedy seeding plus
// first-improvement relocation search with the same objective hierarchy.
SolveResult solve(const ImportanceMatrix& W, const TagMatrix& D, int k,
                  const SolverOptions& opts = {});

} // namespace taghort
