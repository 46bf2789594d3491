#pragma once

#include <utility>
#include <vector>

#include "taghort/metrics.hpp"
#include "taghort/types.hpp"

namespace taghort {

struct TreeOptions {
    int min_leaf_size = 1;
};

struct TreeNode {
    int tag = -1;       // split tag column; -1 marks a leaf
    int yes_child = -1; // tag present
    int no_child = -1;  // tag absent
    int leaf_id = -1;   // index into leaves when tag == -1
};

struct TreeLeaf {
    std::vector<std::size_t> samples;
    std::vector<double> mean;               // leaf mean importance, length m
    std::vector<std::pair<int, bool>> path; // (tag, required presence) from root
};

// Decision-tree cohorts over the tag columns: leaves partition the samples
// disjointly and each leaf carries the mean importance of its members.
struct TreeCohortModel {
    std::vector<TreeNode> nodes; // nodes[0] is the root
    std::vector<TreeLeaf> leaves;
    int requested_k = 0;
    bool early_stop = false; // ran out of improving splits before k leaves
    std::size_t tag_count = 0;
    std::size_t feature_count = 0;
    std::size_t sample_count = 0;

    int k() const { return static_cast<int>(leaves.size()); }
};

// Best-first greedy growth: repeatedly apply the (leaf, tag) split with the
// largest reduction in total within-leaf squared deviation of importance rows
// from the leaf mean, until k leaves or no strictly improving split remains.
TreeCohortModel fit_tree(const ImportanceMatrix& W, const TagMatrix& D, int k,
                         const TreeOptions& opts = {});

// Routes every evaluation row to exactly one leaf and predicts the leaf mean.
Matrix tree_predict_importance(const TreeCohortModel& model, const TagMatrix& D_eval);

// Same error definition as the tag-cohort metric; no averaging is needed since
// leaves are disjoint.
PredictionErrorStats tree_prediction_error(const TreeCohortModel& model,
                                           const ImportanceMatrix& W_eval,
                                           const TagMatrix& D_eval);

} // namespace taghort
