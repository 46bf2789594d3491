#include "taghort/repid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "taghort/errors.hpp"

namespace taghort {

namespace {

// Within-group sum of squared deviations from the group mean, via the
// identity  sum|w_i - mean|^2 = sum|w_i|^2 - |sum w_i|^2 / count.
struct GroupStats {
    std::size_t count = 0;
    std::vector<double> sum;
    double sumsq = 0.0;

    explicit GroupStats(std::size_t m) : sum(m, 0.0) {}

    void add(const double* w, std::size_t m) {
        ++count;
        sumsq += squared_norm(w, m);
        for (std::size_t j = 0; j < m; ++j) sum[j] += w[j];
    }

    double sse(std::size_t m) const {
        if (count == 0) return 0.0;
        return sumsq - squared_norm(sum.data(), m) / static_cast<double>(count);
    }
};

struct WorkingLeaf {
    int node = 0;
    std::vector<std::size_t> samples;
    double sse = 0.0;
    std::vector<std::pair<int, bool>> path;
};

double leaf_sse(const ImportanceMatrix& W, const std::vector<std::size_t>& samples) {
    GroupStats stats(W.features());
    for (std::size_t i : samples) stats.add(W.values.row(i), W.features());
    return stats.sse(W.features());
}

} // namespace

TreeCohortModel fit_tree(const ImportanceMatrix& W, const TagMatrix& D, int k,
                         const TreeOptions& opts) {
    validate_inputs(W, D);
    const std::size_t n = W.samples();
    const std::size_t m = W.features();
    if (k < 1) throw std::invalid_argument("leaf count must be at least 1");
    if (static_cast<std::size_t>(k) > n)
        throw KTooLarge("cannot grow " + std::to_string(k) + " leaves from " +
                        std::to_string(n) + " samples");
    const std::size_t min_leaf = static_cast<std::size_t>(std::max(1, opts.min_leaf_size));

    TreeCohortModel model;
    model.requested_k = k;
    model.tag_count = D.tags;
    model.feature_count = m;
    model.sample_count = n;
    model.nodes.push_back(TreeNode{});

    std::vector<WorkingLeaf> working(1);
    working[0].samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) working[0].samples[i] = i;
    working[0].sse = leaf_sse(W, working[0].samples);

    while (static_cast<int>(working.size()) < k) {
        // Best-first: the single (leaf, tag) split with the largest reduction
        // of total within-leaf squared deviation.
        std::size_t best_leaf = 0;
        std::size_t best_tag = 0;
        double best_reduction = 0.0;
        bool found = false;
        for (std::size_t leaf = 0; leaf < working.size(); ++leaf) {
            const auto& samples = working[leaf].samples;
            if (samples.size() < 2 * min_leaf) continue;
            for (std::size_t p = 0; p < D.tags; ++p) {
                GroupStats yes(m);
                GroupStats no(m);
                for (std::size_t i : samples)
                    (D.at(i, p) ? yes : no).add(W.values.row(i), m);
                if (yes.count < min_leaf || no.count < min_leaf) continue;
                const double reduction = working[leaf].sse - yes.sse(m) - no.sse(m);
                // Guard against accepting pure rounding noise as improvement.
                const double floor = 1e-9 * std::max(1.0, working[leaf].sse);
                if (reduction > floor && (!found || reduction > best_reduction)) {
                    found = true;
                    best_reduction = reduction;
                    best_leaf = leaf;
                    best_tag = p;
                }
            }
        }
        if (!found) {
            model.early_stop = true;
            break;
        }

        WorkingLeaf yes_leaf;
        WorkingLeaf no_leaf;
        yes_leaf.path = working[best_leaf].path;
        yes_leaf.path.emplace_back(static_cast<int>(best_tag), true);
        no_leaf.path = working[best_leaf].path;
        no_leaf.path.emplace_back(static_cast<int>(best_tag), false);
        for (std::size_t i : working[best_leaf].samples)
            (D.at(i, best_tag) ? yes_leaf : no_leaf).samples.push_back(i);
        yes_leaf.sse = leaf_sse(W, yes_leaf.samples);
        no_leaf.sse = leaf_sse(W, no_leaf.samples);

        const int parent_node = working[best_leaf].node;
        model.nodes[static_cast<std::size_t>(parent_node)].tag = static_cast<int>(best_tag);
        yes_leaf.node = static_cast<int>(model.nodes.size());
        model.nodes.push_back(TreeNode{});
        no_leaf.node = static_cast<int>(model.nodes.size());
        model.nodes.push_back(TreeNode{});
        model.nodes[static_cast<std::size_t>(parent_node)].yes_child = yes_leaf.node;
        model.nodes[static_cast<std::size_t>(parent_node)].no_child = no_leaf.node;

        working[best_leaf] = std::move(yes_leaf);
        working.push_back(std::move(no_leaf));
    }

    model.leaves.reserve(working.size());
    for (std::size_t leaf = 0; leaf < working.size(); ++leaf) {
        TreeLeaf out;
        out.samples = working[leaf].samples;
        out.path = working[leaf].path;
        out.mean.assign(m, 0.0);
        for (std::size_t i : out.samples)
            for (std::size_t j = 0; j < m; ++j) out.mean[j] += W.values(i, j);
        for (std::size_t j = 0; j < m; ++j)
            out.mean[j] /= static_cast<double>(out.samples.size());
        model.nodes[static_cast<std::size_t>(working[leaf].node)].leaf_id =
            static_cast<int>(leaf);
        model.leaves.push_back(std::move(out));
    }
    return model;
}

Matrix tree_predict_importance(const TreeCohortModel& model, const TagMatrix& D_eval) {
    if (D_eval.tags != model.tag_count)
        throw DictionaryMismatch("evaluation tags have " + std::to_string(D_eval.tags) +
                                 " columns, tree was grown with " +
                                 std::to_string(model.tag_count));
    Matrix out(D_eval.samples(), model.feature_count);
    for (std::size_t i = 0; i < D_eval.samples(); ++i) {
        const TreeNode* node = &model.nodes[0];
        while (node->tag >= 0)
            node = &model.nodes[static_cast<std::size_t>(
                D_eval.at(i, static_cast<std::size_t>(node->tag)) ? node->yes_child
                                                                  : node->no_child)];
        const auto& mean = model.leaves[static_cast<std::size_t>(node->leaf_id)].mean;
        for (std::size_t j = 0; j < model.feature_count; ++j) out(i, j) = mean[j];
    }
    return out;
}

PredictionErrorStats tree_prediction_error(const TreeCohortModel& model,
                                           const ImportanceMatrix& W_eval,
                                           const TagMatrix& D_eval) {
    if (W_eval.samples() != D_eval.samples())
        throw DimensionMismatch("evaluation importance and tag row counts disagree");
    if (W_eval.features() != model.feature_count)
        throw DimensionMismatch("evaluation importance columns do not match the tree");
    const Matrix predictions = tree_predict_importance(model, D_eval);
    PredictionErrorStats stats;
    for (std::size_t i = 0; i < W_eval.samples(); ++i)
        stats.sum += squared_distance(W_eval.values.row(i), predictions.row(i),
                                      model.feature_count);
    stats.mean = W_eval.samples() == 0 ? 0.0
                                       : stats.sum / static_cast<double>(W_eval.samples());
    return stats;
}

} // namespace taghort
