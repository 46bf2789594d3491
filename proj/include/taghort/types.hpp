#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "taghort/matrix.hpp"

namespace taghort {

// Local importance scores, one row per sample, one column per importance
// dimension. Entries must be finite; feature names are unique.
struct ImportanceMatrix {
    ImportanceMatrix(Matrix values, std::vector<std::string> feature_names);

    std::size_t samples() const { return values.rows(); }
    std::size_t features() const { return values.cols(); }

    Matrix values;
    std::vector<std::string> feature_names;
};

// Binary tag indicators, one row per sample, one column per tag, plus the
// tag dictionary (unique human-readable labels).
struct TagMatrix {
    TagMatrix(std::size_t n, std::size_t r, std::vector<std::uint8_t> values,
              std::vector<std::string> dictionary);

    std::uint8_t at(std::size_t i, std::size_t p) const { return values[i * tags + p]; }
    std::size_t samples() const { return n; }

    std::size_t n = 0;
    std::size_t tags = 0;
    std::vector<std::uint8_t> values; // row-major n*tags, entries 0/1
    std::vector<std::string> dictionary;
};

// A cohort assignment over n samples with labels 1..k. Every label occurs at
// least once and labels are in canonical order: the first occurrence of t
// precedes the first occurrence of t+1, which removes relabeling symmetry.
class Partition {
public:
    Partition(std::vector<int> assignment, int k);

    const std::vector<int>& assignment() const { return assignment_; }
    int k() const { return k_; }
    std::size_t size() const { return assignment_.size(); }
    int cohort_of(std::size_t i) const { return assignment_[i]; }

    // Member counts indexed by cohort-1.
    std::vector<int> cohort_sizes() const;

    bool operator==(const Partition&) const = default;

private:
    std::vector<int> assignment_;
    int k_ = 0;
};

// Relabels an arbitrary assignment by order of first occurrence, yielding the
// unique canonical Partition with the same co-membership relation.
Partition canonicalize(const std::vector<int>& assignment);

bool is_canonical(const std::vector<int>& assignment);

// A solved cohort explanation: the partition, the tags shared by every member
// of each cohort, and the per-cohort mean importance vectors.
struct CohortModel {
    Partition partition;
    std::vector<std::vector<int>> tag_sets; // 0-based tag indices, one list per cohort
    Matrix cohort_means;                    // k x m
    int descriptiveness = 0;                // min over cohorts of |tag_sets[t]|
    double compactness = 0.0;               // within-cohort sum of pairwise squared distances
    std::size_t tag_count = 0;              // r of the training dictionary
    std::vector<int> cohort_sizes;

    int k() const { return partition.k(); }
    std::size_t features() const { return cohort_means.cols(); }
};

// Checks the shared invariants of a (W, D) pair: matching row counts, finite
// importances, binary tags. Throws on violation, returns normally otherwise.
void validate_inputs(const ImportanceMatrix& W, const TagMatrix& D);

} // namespace taghort
