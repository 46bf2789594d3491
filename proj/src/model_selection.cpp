#include "taghort/model_selection.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "taghort/errors.hpp"
#include "taghort/metrics.hpp"

namespace taghort {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ImportanceMatrix subset_importance(const ImportanceMatrix& W,
                                   const std::vector<std::size_t>& indices) {
    Matrix values(indices.size(), W.features());
    for (std::size_t row = 0; row < indices.size(); ++row)
        for (std::size_t j = 0; j < W.features(); ++j)
            values(row, j) = W.values(indices[row], j);
    return ImportanceMatrix(std::move(values), W.feature_names);
}

TagMatrix subset_tags(const TagMatrix& D, const std::vector<std::size_t>& indices) {
    std::vector<std::uint8_t> values(indices.size() * D.tags);
    for (std::size_t row = 0; row < indices.size(); ++row)
        for (std::size_t p = 0; p < D.tags; ++p)
            values[row * D.tags + p] = D.at(indices[row], p);
    return TagMatrix(indices.size(), D.tags, std::move(values), D.dictionary);
}

} // namespace

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int folds,
                                                 std::uint64_t seed) {
    if (folds < 2) throw Error("cross-validation needs at least 2 folds");
    if (static_cast<std::size_t>(folds) > n)
        throw Error("more folds (" + std::to_string(folds) + ") than samples (" +
                    std::to_string(n) + ")");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(mix(seed));
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(folds));
    const std::size_t base = n / static_cast<std::size_t>(folds);
    const std::size_t extra = n % static_cast<std::size_t>(folds);
    std::size_t pos = 0;
    for (std::size_t f = 0; f < static_cast<std::size_t>(folds); ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        out[f].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                      order.begin() + static_cast<std::ptrdiff_t>(pos + size));
        std::sort(out[f].begin(), out[f].end());
        pos += size;
    }
    return out;
}

SweepReport sweep(const ImportanceMatrix& W, const TagMatrix& D, const SweepConfig& config) {
    validate_inputs(W, D);
    if (config.k_values.empty()) throw Error("sweep needs at least one candidate k");
    for (int k : config.k_values)
        if (k < 1) throw Error("candidate k must be at least 1");

    const std::size_t n = W.samples();
    const auto folds = make_folds(n, config.folds, config.rng_seed);

    std::size_t max_fold = 0;
    for (const auto& fold : folds) max_fold = std::max(max_fold, fold.size());
    const std::size_t min_train = n - max_fold;

    std::vector<int> ks = config.k_values;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    if (static_cast<std::size_t>(ks.back()) > min_train)
        throw KTooLarge("k=" + std::to_string(ks.back()) +
                        " exceeds the smallest training fold (" + std::to_string(min_train) + ")");

    struct Job {
        int k;
        int fold;
    };
    std::vector<Job> jobs;
    for (int k : ks)
        for (int f = 0; f < config.folds; ++f) jobs.push_back({k, f});

    std::vector<SweepCell> cells(jobs.size());
    std::vector<ImportanceMatrix> train_W;
    std::vector<TagMatrix> train_D;
    std::vector<ImportanceMatrix> val_W;
    std::vector<TagMatrix> val_D;
    train_W.reserve(folds.size());
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::size_t> train;
        train.reserve(n - folds[f].size());
        std::size_t cursor = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (cursor < folds[f].size() && folds[f][cursor] == i) {
                ++cursor;
                continue;
            }
            train.push_back(i);
        }
        train_W.push_back(subset_importance(W, train));
        train_D.push_back(subset_tags(D, train));
        val_W.push_back(subset_importance(W, folds[f]));
        val_D.push_back(subset_tags(D, folds[f]));
    }

    auto run_job = [&](std::size_t idx) {
        const auto [k, fold] = jobs[idx];
        SolverOptions opts = config.solver;
        // Independent stream per (k, fold) so results do not depend on the
        // execution order or thread count.
        opts.rng_seed = mix(config.solver.rng_seed ^ mix(static_cast<std::uint64_t>(k) * 1315423911ULL +
                                                         static_cast<std::uint64_t>(fold)));
        const auto started = std::chrono::steady_clock::now();
        const SolveResult fit = solve(train_W[static_cast<std::size_t>(fold)],
                                      train_D[static_cast<std::size_t>(fold)], k, opts);
        const PredictionErrorStats err = importance_prediction_error_stats(
            fit.model, val_W[static_cast<std::size_t>(fold)], val_D[static_cast<std::size_t>(fold)]);
        SweepCell cell;
        cell.k = k;
        cell.fold = fold;
        cell.train_compactness = fit.model.compactness;
        cell.train_descriptiveness = fit.model.descriptiveness;
        cell.val_error_sum = err.sum;
        cell.val_error_mean = err.mean;
        cell.fallback_rate = err.fallback_rate;
        cell.proven_optimal = fit.proven_optimal;
        cell.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        cells[idx] = cell;
    };

    const int threads = std::max(1, config.threads);
    if (threads == 1 || jobs.size() <= 1) {
        for (std::size_t idx = 0; idx < jobs.size(); ++idx) run_job(idx);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t idx = next.fetch_add(1); idx < jobs.size();
                 idx = next.fetch_add(1))
                run_job(idx);
        };
        std::vector<std::thread> pool;
        const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(threads), jobs.size());
        pool.reserve(count);
        for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    SweepReport report;
    report.cells = std::move(cells);
    for (int k : ks) {
        SweepSummary summary;
        summary.k = k;
        summary.all_proven_optimal = true;
        std::vector<double> errors;
        for (const auto& cell : report.cells) {
            if (cell.k != k) continue;
            errors.push_back(cell.val_error_mean);
            summary.mean_train_compactness += cell.train_compactness;
            summary.mean_train_descriptiveness += cell.train_descriptiveness;
            summary.mean_fallback_rate += cell.fallback_rate;
            summary.all_proven_optimal = summary.all_proven_optimal && cell.proven_optimal;
        }
        const double f = static_cast<double>(errors.size());
        summary.mean_val_error = std::accumulate(errors.begin(), errors.end(), 0.0) / f;
        double var = 0.0;
        for (double e : errors) var += (e - summary.mean_val_error) * (e - summary.mean_val_error);
        summary.std_val_error = errors.size() > 1 ? std::sqrt(var / (f - 1.0)) : 0.0;
        summary.mean_train_compactness /= f;
        summary.mean_train_descriptiveness /= f;
        summary.mean_fallback_rate /= f;
        report.per_k.push_back(summary);
    }

    // Lowest mean error wins; exact ties fall to the smaller k.
    report.selected_k = report.per_k.front().k;
    double best = report.per_k.front().mean_val_error;
    for (const auto& summary : report.per_k) {
        if (summary.mean_val_error < best) {
            best = summary.mean_val_error;
            report.selected_k = summary.k;
        }
    }
    return report;
}

} // namespace taghort
