#include "taghort/types.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "taghort/errors.hpp"

namespace taghort {

namespace {

void require_unique(const std::vector<std::string>& names, const char* what) {
    std::unordered_set<std::string> seen;
    for (const auto& name : names)
        if (!seen.insert(name).second)
            throw Error(std::string(what) + ": duplicate entry \"" + name + "\"");
}

} // namespace

ImportanceMatrix::ImportanceMatrix(Matrix values_in, std::vector<std::string> names_in)
    : values(std::move(values_in)), feature_names(std::move(names_in)) {
    // Zero rows are tolerated so empty evaluation sets can be scored; the
    // validate_inputs entry point still rejects them for training data.
    if (values.cols() == 0)
        throw DimensionMismatch("importance matrix must have at least one column");
    if (feature_names.size() != values.cols())
        throw DimensionMismatch("feature name count does not match importance columns");
    require_unique(feature_names, "feature names");
    for (std::size_t i = 0; i < values.rows(); ++i)
        for (std::size_t j = 0; j < values.cols(); ++j)
            if (!std::isfinite(values(i, j)))
                throw NonFinite("importance value at row " + std::to_string(i) + ", column " +
                                std::to_string(j) + " is not finite");
}

TagMatrix::TagMatrix(std::size_t n_in, std::size_t r_in, std::vector<std::uint8_t> values_in,
                     std::vector<std::string> dictionary_in)
    : n(n_in), tags(r_in), values(std::move(values_in)), dictionary(std::move(dictionary_in)) {
    if (tags == 0) throw DimensionMismatch("tag matrix must have at least one column");
    if (values.size() != n * tags)
        throw DimensionMismatch("tag matrix storage does not match its dimensions");
    if (dictionary.size() != tags)
        throw DimensionMismatch("tag dictionary length does not match tag columns");
    require_unique(dictionary, "tag dictionary");
    for (std::size_t idx = 0; idx < values.size(); ++idx)
        if (values[idx] > 1)
            throw NonBinary("tag entry at row " + std::to_string(idx / tags) + ", column " +
                            std::to_string(idx % tags) + " is outside {0,1}");
}

Partition::Partition(std::vector<int> assignment, int k)
    : assignment_(std::move(assignment)), k_(k) {
    if (assignment_.empty()) throw EmptyCohort("partition over zero samples");
    if (k_ < 1 || static_cast<std::size_t>(k_) > assignment_.size())
        throw EmptyCohort("cohort count " + std::to_string(k_) + " is outside 1.." +
                          std::to_string(assignment_.size()));
    std::vector<int> counts(static_cast<std::size_t>(k_), 0);
    int highest_seen = 0;
    for (int label : assignment_) {
        if (label < 1 || label > k_)
            throw EmptyCohort("cohort label " + std::to_string(label) + " outside 1.." +
                              std::to_string(k_));
        // Canonical order: a label may exceed the running maximum by at most one.
        if (label > highest_seen + 1)
            throw EmptyCohort("assignment is not in first-occurrence order");
        highest_seen = std::max(highest_seen, label);
        ++counts[static_cast<std::size_t>(label - 1)];
    }
    for (int t = 0; t < k_; ++t)
        if (counts[static_cast<std::size_t>(t)] == 0)
            throw EmptyCohort("cohort " + std::to_string(t + 1) + " has no members");
}

std::vector<int> Partition::cohort_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(k_), 0);
    for (int label : assignment_) ++sizes[static_cast<std::size_t>(label - 1)];
    return sizes;
}

bool is_canonical(const std::vector<int>& assignment) {
    int highest_seen = 0;
    for (int label : assignment) {
        if (label < 1 || label > highest_seen + 1) return false;
        highest_seen = std::max(highest_seen, label);
    }
    return !assignment.empty();
}

Partition canonicalize(const std::vector<int>& assignment) {
    if (assignment.empty()) throw EmptyCohort("cannot canonicalize an empty assignment");
    std::vector<int> relabeled(assignment.size());
    std::unordered_map<int, int> label_map;
    int next = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        auto [it, inserted] = label_map.try_emplace(assignment[i], next + 1);
        if (inserted) ++next;
        relabeled[i] = it->second;
    }
    return Partition(std::move(relabeled), next);
}

void validate_inputs(const ImportanceMatrix& W, const TagMatrix& D) {
    // Construction already enforces finiteness, binarity and name uniqueness;
    // the cross-checks left are non-empty data and matching sample counts.
    if (W.samples() == 0)
        throw DimensionMismatch("training data must contain at least one sample");
    if (W.samples() != D.samples())
        throw DimensionMismatch("importance rows (" + std::to_string(W.samples()) +
                                ") and tag rows (" + std::to_string(D.samples()) +
                                ") disagree");
}

} // namespace taghort
