#pragma once

// Test-only reference implementations, kept deliberately naive and separate
// from the library's bitset/identity-based code paths so they can serve as
// independent oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "taghort/types.hpp"

namespace taghort::testing {

// Within-cohort sum of pairwise squared distances by direct double loop.
inline double direct_pairwise_compactness(const Matrix& W, const std::vector<int>& assignment) {
    double total = 0.0;
    const std::size_t n = W.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (assignment[i] != assignment[j]) continue;
            double d2 = 0.0;
            for (std::size_t c = 0; c < W.cols(); ++c) {
                const double d = W(i, c) - W(j, c);
                d2 += d * d;
            }
            total += d2;
        }
    return total;
}

// Descriptiveness by scanning tags one by one, no bit tricks.
inline int naive_descriptiveness(const TagMatrix& D, const std::vector<int>& assignment, int k) {
    int worst = std::numeric_limits<int>::max();
    for (int t = 1; t <= k; ++t) {
        int shared = 0;
        for (std::size_t p = 0; p < D.tags; ++p) {
            bool all = true;
            for (std::size_t i = 0; i < D.samples() && all; ++i)
                if (assignment[i] == t && D.at(i, p) == 0) all = false;
            if (all) ++shared;
        }
        worst = std::min(worst, shared);
    }
    return worst;
}

// Enumerates every canonical assignment of n samples into exactly k cohorts.
inline void enumerate_canonical(std::size_t n, int k,
                                const std::function<void(const std::vector<int>&)>& visit) {
    std::vector<int> assignment(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
        if (i == n) {
            if (used == k) visit(assignment);
            return;
        }
        const int limit = std::min(used + 1, k);
        for (int t = 1; t <= limit; ++t) {
            const int used_after = t == used + 1 ? used + 1 : used;
            if (static_cast<std::size_t>(k - used_after) > n - i - 1) continue;
            assignment[i] = t;
            rec(i + 1, used_after);
        }
        assignment[i] = 0;
    };
    rec(0, 0);
}

struct BruteForceResult {
    int best_descriptiveness = -1;
    double best_compactness = std::numeric_limits<double>::infinity();
    std::vector<int> best_assignment;
};

// Exhaustive two-phase optimum: the maximum descriptiveness, and the minimum
// direct-sum compactness among assignments attaining at least that value.
inline BruteForceResult brute_force_solve(const ImportanceMatrix& W, const TagMatrix& D, int k) {
    BruteForceResult result;
    enumerate_canonical(W.samples(), k, [&](const std::vector<int>& assignment) {
        const int desc = naive_descriptiveness(D, assignment, k);
        result.best_descriptiveness = std::max(result.best_descriptiveness, desc);
    });
    enumerate_canonical(W.samples(), k, [&](const std::vector<int>& assignment) {
        const int desc = naive_descriptiveness(D, assignment, k);
        if (desc < result.best_descriptiveness) return;
        const double comp = direct_pairwise_compactness(W.values, assignment);
        if (comp < result.best_compactness) {
            result.best_compactness = comp;
            result.best_assignment = assignment;
        }
    });
    return result;
}

inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
    const std::size_t n = a.size();
    int ka = 0;
    int kb = 0;
    for (int v : a) ka = std::max(ka, v);
    for (int v : b) kb = std::max(kb, v);
    std::vector<std::vector<long long>> table(static_cast<std::size_t>(ka),
                                              std::vector<long long>(static_cast<std::size_t>(kb), 0));
    for (std::size_t i = 0; i < n; ++i)
        ++table[static_cast<std::size_t>(a[i] - 1)][static_cast<std::size_t>(b[i] - 1)];
    auto choose2 = [](long long x) { return x * (x - 1) / 2; };
    long long cells = 0;
    long long rows = 0;
    long long cols = 0;
    for (int i = 0; i < ka; ++i) {
        long long row_sum = 0;
        for (int j = 0; j < kb; ++j) {
            cells += choose2(table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            row_sum += table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        rows += choose2(row_sum);
    }
    for (int j = 0; j < kb; ++j) {
        long long col_sum = 0;
        for (int i = 0; i < ka; ++i)
            col_sum += table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        cols += choose2(col_sum);
    }
    const double total = static_cast<double>(choose2(static_cast<long long>(n)));
    const double expected = static_cast<double>(rows) * static_cast<double>(cols) / total;
    const double maximum = 0.5 * (static_cast<double>(rows) + static_cast<double>(cols));
    if (maximum == expected) return 1.0;
    return (static_cast<double>(cells) - expected) / (maximum - expected);
}

// Random (W, D) instance for property tests.
struct RandomInstance {
    ImportanceMatrix W;
    TagMatrix D;
};

inline RandomInstance make_random_instance(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                           std::size_t r) {
    std::uniform_real_distribution<double> real(-1.0, 1.0);
    std::bernoulli_distribution bit(0.55);
    Matrix values(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) values(i, j) = real(rng);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < m; ++j) names.push_back("f" + std::to_string(j));
    std::vector<std::uint8_t> bits(n * r);
    for (auto& b : bits) b = bit(rng) ? 1 : 0;
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < r; ++p) labels.push_back("tag" + std::to_string(p));
    return RandomInstance{ImportanceMatrix(std::move(values), std::move(names)),
                          TagMatrix(n, r, std::move(bits), std::move(labels))};
}

// Checks every structural requirement on a solved model against its inputs:
// non-empty cohorts, canonical labels, membership and maximality of the tag
// sets, and consistency of the stored objectives.
inline void check_model_invariants(const CohortModel& model, const ImportanceMatrix& W,
                                   const TagMatrix& D,
                                   const std::function<void(bool, const char*)>& expect) {
    const auto& assignment = model.partition.assignment();
    const int k = model.partition.k();
    expect(assignment.size() == W.samples(), "assignment covers all samples");

    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int label : assignment) {
        expect(label >= 1 && label <= k, "labels within 1..k");
        ++counts[static_cast<std::size_t>(label - 1)];
    }
    for (int c : counts) expect(c >= 1, "no empty cohort");

    int highest = 0;
    for (int label : assignment) {
        expect(label <= highest + 1, "first occurrences ordered");
        highest = std::max(highest, label);
    }

    for (int t = 0; t < k; ++t) {
        std::vector<bool> in_set(D.tags, false);
        for (int p : model.tag_sets[static_cast<std::size_t>(t)])
            in_set[static_cast<std::size_t>(p)] = true;
        for (std::size_t p = 0; p < D.tags; ++p) {
            bool all = true;
            for (std::size_t i = 0; i < D.samples(); ++i)
                if (assignment[i] == t + 1 && D.at(i, p) == 0) {
                    all = false;
                    break;
                }
            expect(in_set[p] == all, "tag set is exactly the shared tags");
        }
    }

    const int naive = naive_descriptiveness(D, assignment, k);
    expect(model.descriptiveness == naive, "stored descriptiveness matches");
    const double direct = direct_pairwise_compactness(W.values, assignment);
    const double scale = std::max(1.0, std::abs(direct));
    expect(std::abs(model.compactness - direct) <= 1e-9 * scale,
           "stored compactness matches the direct sum");
}

} // namespace taghort::testing
