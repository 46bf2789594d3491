#include "taghort/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "taghort/bitrows.hpp"
#include "taghort/errors.hpp"

namespace taghort {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

double compactness(const ImportanceMatrix& W, const Partition& P) {
    if (P.size() != W.samples())
        throw DimensionMismatch("partition covers " + std::to_string(P.size()) +
                                " samples, importance matrix has " +
                                std::to_string(W.samples()));
    const std::size_t m = W.features();
    const std::size_t k = static_cast<std::size_t>(P.k());
    std::vector<int> count(k, 0);
    std::vector<double> sum(k * m, 0.0);
    std::vector<double> sumsq(k, 0.0);
    for (std::size_t i = 0; i < W.samples(); ++i) {
        const auto t = static_cast<std::size_t>(P.cohort_of(i) - 1);
        const double* w = W.values.row(i);
        ++count[t];
        sumsq[t] += squared_norm(w, m);
        double* s = sum.data() + t * m;
        for (std::size_t j = 0; j < m; ++j) s[j] += w[j];
    }
    double total = 0.0;
    for (std::size_t t = 0; t < k; ++t)
        total += count[t] * sumsq[t] - squared_norm(sum.data() + t * m, m);
    return total;
}

namespace {

// AND of the packed tag rows of each cohort.
std::vector<std::uint64_t> cohort_intersections(const PackedTags& packed, const Partition& P) {
    const std::size_t words = packed.words();
    const std::size_t k = static_cast<std::size_t>(P.k());
    std::vector<std::uint64_t> acc(k * words, 0);
    std::vector<bool> started(k, false);
    for (std::size_t i = 0; i < P.size(); ++i) {
        const auto t = static_cast<std::size_t>(P.cohort_of(i) - 1);
        std::uint64_t* dst = acc.data() + t * words;
        if (!started[t]) {
            bits_copy(dst, packed.row(i), words);
            started[t] = true;
        } else {
            bits_and(dst, packed.row(i), words);
        }
    }
    return acc;
}

} // namespace

int descriptiveness(const TagMatrix& D, const Partition& P) {
    if (P.size() != D.samples())
        throw DimensionMismatch("partition covers " + std::to_string(P.size()) +
                                " samples, tag matrix has " + std::to_string(D.samples()));
    const PackedTags packed(D);
    const auto acc = cohort_intersections(packed, P);
    int best = std::numeric_limits<int>::max();
    for (int t = 0; t < P.k(); ++t)
        best = std::min(best, bits_popcount(acc.data() + static_cast<std::size_t>(t) * packed.words(),
                                            packed.words()));
    return best;
}

std::vector<std::vector<int>> derive_tag_sets(const TagMatrix& D, const Partition& P) {
    if (P.size() != D.samples())
        throw DimensionMismatch("partition covers " + std::to_string(P.size()) +
                                " samples, tag matrix has " + std::to_string(D.samples()));
    const PackedTags packed(D);
    const auto acc = cohort_intersections(packed, P);
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(P.k()));
    for (int t = 0; t < P.k(); ++t)
        sets[static_cast<std::size_t>(t)] = bits_to_indices(
            acc.data() + static_cast<std::size_t>(t) * packed.words(), packed.width());
    return sets;
}

CohortModel build_cohort_model(const ImportanceMatrix& W, const TagMatrix& D,
                               const Partition& P) {
    validate_inputs(W, D);
    if (P.size() != W.samples())
        throw DimensionMismatch("partition size does not match the data");
    const std::size_t m = W.features();
    const auto k = static_cast<std::size_t>(P.k());

    Matrix means(k, m, 0.0);
    std::vector<int> sizes(k, 0);
    for (std::size_t i = 0; i < W.samples(); ++i) {
        const auto t = static_cast<std::size_t>(P.cohort_of(i) - 1);
        ++sizes[t];
        for (std::size_t j = 0; j < m; ++j) means(t, j) += W.values(i, j);
    }
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t j = 0; j < m; ++j) means(t, j) /= sizes[t];

    CohortModel model{P, derive_tag_sets(D, P), std::move(means), 0, 0.0, D.tags,
                      std::move(sizes)};
    int desc = std::numeric_limits<int>::max();
    for (const auto& s : model.tag_sets) desc = std::min(desc, static_cast<int>(s.size()));
    model.descriptiveness = desc;
    model.compactness = compactness(W, P);
    return model;
}

namespace {

// Depth-first search over canonical assignments: sample i may join any already
// open cohort or open the next one, so first occurrences appear in label order
// and no relabeling symmetry is ever explored.
class ExactSearch {
public:
    ExactSearch(const ImportanceMatrix& W, const PackedTags& packed, int k,
                const SolverOptions& opts, std::optional<Clock::time_point> deadline)
        : W_(W.values), packed_(packed), n_(W.samples()), m_(W.features()),
          k_(k), words_(packed.words()), tol_(opts.compactness_tolerance),
          deadline_(deadline) {
        count_.assign(k_, 0);
        sum_.assign(static_cast<std::size_t>(k_) * m_, 0.0);
        sumsq_.assign(k_, 0.0);
        acc_.assign(static_cast<std::size_t>(k_) * words_, 0);
        pop_.assign(k_, 0);
        assignment_.assign(n_, 0);
        saved_acc_.assign(n_ * words_, 0);
        saved_pop_.assign(n_, 0);
        saved_delta_.assign(n_, 0.0);
    }

    void run() {
        phase_ = 1;
        dfs(0);
        best_comp_ = std::numeric_limits<double>::infinity();
        if (!best_desc_assignment_.empty()) {
            // The phase-1 incumbent satisfies the descriptiveness bound and
            // seeds the phase-2 pruning.
            best_comp_assignment_ = best_desc_assignment_;
            best_comp_ = assignment_compactness(best_desc_assignment_);
        }
        phase_ = 2;
        dfs(0);
    }

    int best_descriptiveness() const { return best_desc_; }
    double best_compactness() const { return best_comp_; }
    const std::vector<int>& best_assignment() const { return best_comp_assignment_; }
    std::uint64_t nodes() const { return nodes_; }
    bool timed_out() const { return timed_out_; }

private:
    bool out_of_time() {
        if (timed_out_) return true;
        if (!deadline_) return false;
        // Never abandon the search before it holds a complete solution.
        const bool has_solution = phase_ == 1 ? !best_desc_assignment_.empty()
                                              : !best_comp_assignment_.empty();
        if (!has_solution) return false;
        if ((nodes_ & 1023) != 0) return false;
        if (Clock::now() >= *deadline_) timed_out_ = true;
        return timed_out_;
    }

    int open_min_pop() const {
        int lo = std::numeric_limits<int>::max();
        for (int t = 0; t < used_; ++t) lo = std::min(lo, pop_[static_cast<std::size_t>(t)]);
        return lo;
    }

    double assignment_compactness(const std::vector<int>& assignment) const {
        std::vector<int> count(k_, 0);
        std::vector<double> sum(static_cast<std::size_t>(k_) * m_, 0.0);
        std::vector<double> sumsq(k_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            const auto t = static_cast<std::size_t>(assignment[i] - 1);
            const double* w = W_.row(i);
            ++count[t];
            sumsq[t] += squared_norm(w, m_);
            for (std::size_t j = 0; j < m_; ++j) sum[t * m_ + j] += w[j];
        }
        double total = 0.0;
        for (int t = 0; t < k_; ++t)
            total += count[static_cast<std::size_t>(t)] * sumsq[static_cast<std::size_t>(t)] -
                     squared_norm(sum.data() + static_cast<std::size_t>(t) * m_, m_);
        return total;
    }

    void place(std::size_t i, int t) {
        const double* w = W_.row(i);
        auto& cnt = count_[static_cast<std::size_t>(t)];
        double* s = sum_.data() + static_cast<std::size_t>(t) * m_;
        std::uint64_t* acc = acc_.data() + static_cast<std::size_t>(t) * words_;
        const double delta = cnt * squared_norm(w, m_) - 2.0 * dot(w, s, m_) +
                             sumsq_[static_cast<std::size_t>(t)];
        saved_delta_[i] = delta;
        saved_pop_[i] = pop_[static_cast<std::size_t>(t)];
        current_comp_ += delta;
        sumsq_[static_cast<std::size_t>(t)] += squared_norm(w, m_);
        for (std::size_t j = 0; j < m_; ++j) s[j] += w[j];
        if (cnt == 0) {
            bits_copy(acc, packed_.row(i), words_);
            ++used_;
        } else {
            bits_copy(saved_acc_.data() + i * words_, acc, words_);
            bits_and(acc, packed_.row(i), words_);
        }
        pop_[static_cast<std::size_t>(t)] = bits_popcount(acc, words_);
        ++cnt;
        assignment_[i] = t + 1;
    }

    void unplace(std::size_t i, int t) {
        const double* w = W_.row(i);
        auto& cnt = count_[static_cast<std::size_t>(t)];
        double* s = sum_.data() + static_cast<std::size_t>(t) * m_;
        std::uint64_t* acc = acc_.data() + static_cast<std::size_t>(t) * words_;
        --cnt;
        if (cnt == 0) {
            --used_;
        } else {
            bits_copy(acc, saved_acc_.data() + i * words_, words_);
        }
        pop_[static_cast<std::size_t>(t)] = saved_pop_[i];
        sumsq_[static_cast<std::size_t>(t)] -= squared_norm(w, m_);
        for (std::size_t j = 0; j < m_; ++j) s[j] -= w[j];
        current_comp_ -= saved_delta_[i];
        assignment_[i] = 0;
    }

    void dfs(std::size_t i) {
        if (out_of_time()) return;
        if (i == n_) {
            if (used_ != k_) return;
            if (phase_ == 1) {
                const int desc = open_min_pop();
                if (desc > best_desc_) {
                    best_desc_ = desc;
                    best_desc_assignment_ = assignment_;
                }
            } else if (current_comp_ < best_comp_ - tol_) {
                best_comp_ = current_comp_;
                best_comp_assignment_ = assignment_;
            }
            return;
        }
        const std::size_t remaining_after = n_ - i - 1;
        const int limit = std::min(used_ + 1, k_);
        for (int t = 0; t < limit; ++t) {
            const int used_after = t == used_ ? used_ + 1 : used_;
            if (static_cast<std::size_t>(k_ - used_after) > remaining_after) continue;
            ++nodes_;
            place(i, t);
            bool viable = true;
            if (phase_ == 1) {
                // AND masks only lose bits, so the weakest open cohort bounds
                // every completion from above.
                viable = open_min_pop() > best_desc_;
            } else {
                viable = pop_[static_cast<std::size_t>(t)] >= required_desc_() &&
                         current_comp_ < best_comp_ - tol_;
            }
            if (viable) dfs(i + 1);
            unplace(i, t);
            if (timed_out_) return;
        }
    }

    int required_desc_() const { return best_desc_; }

    const Matrix& W_;
    const PackedTags& packed_;
    std::size_t n_;
    std::size_t m_;
    int k_;
    std::size_t words_;
    double tol_;
    std::optional<Clock::time_point> deadline_;

    int used_ = 0;
    std::vector<int> count_;
    std::vector<double> sum_;
    std::vector<double> sumsq_;
    std::vector<std::uint64_t> acc_;
    std::vector<int> pop_;
    std::vector<int> assignment_;
    std::vector<std::uint64_t> saved_acc_;
    std::vector<int> saved_pop_;
    std::vector<double> saved_delta_;
    double current_comp_ = 0.0;

    int phase_ = 1;
    int best_desc_ = -1;
    std::vector<int> best_desc_assignment_;
    double best_comp_ = std::numeric_limits<double>::infinity();
    std::vector<int> best_comp_assignment_;
    std::uint64_t nodes_ = 0;
    bool timed_out_ = false;
};

// Multi-restart greedy construction plus first-improvement relocation search.
// Restarts are compared lexicographically: descriptiveness first, then lower
// compactness, then the smaller canonical assignment for determinism.
class HeuristicSearch {
public:
    HeuristicSearch(const ImportanceMatrix& W, const PackedTags& packed, int k,
                    const SolverOptions& opts, std::optional<Clock::time_point> deadline)
        : W_(W.values), packed_(packed), n_(W.samples()), m_(W.features()), k_(k),
          r_(packed.width()), words_(packed.words()), tol_(opts.compactness_tolerance),
          restarts_(std::max(1, opts.restarts)), seed_(opts.rng_seed), deadline_(deadline) {}

    void run() {
        for (int restart = 0; restart < restarts_; ++restart) {
            if (out_of_time()) break;
            build_initial(restart);
            local_search();
            offer_candidate();
        }
    }

    int best_descriptiveness() const { return best_desc_; }
    const std::vector<int>& best_assignment() const { return best_assignment_; }
    std::uint64_t moves_evaluated() const { return moves_; }
    bool timed_out() const { return timed_out_; }

private:
    bool out_of_time() {
        if (timed_out_) return true;
        if (deadline_ && !best_assignment_.empty() && Clock::now() >= *deadline_)
            timed_out_ = true;
        return timed_out_;
    }

    // --- cohort bookkeeping -------------------------------------------------

    void reset_state() {
        count_.assign(k_, 0);
        sum_.assign(static_cast<std::size_t>(k_) * m_, 0.0);
        sumsq_.assign(k_, 0.0);
        zeros_.assign(static_cast<std::size_t>(k_) * r_, 0);
        mask_.assign(static_cast<std::size_t>(k_) * words_, 0);
        full_.assign(k_, 0);
        assignment_.assign(n_, 0);
        comp_ = 0.0;
    }

    void add_member(std::size_t i, int t) {
        const double* w = W_.row(i);
        double* s = sum_.data() + static_cast<std::size_t>(t) * m_;
        comp_ += count_[static_cast<std::size_t>(t)] * squared_norm(w, m_) -
                 2.0 * dot(w, s, m_) + sumsq_[static_cast<std::size_t>(t)];
        sumsq_[static_cast<std::size_t>(t)] += squared_norm(w, m_);
        for (std::size_t j = 0; j < m_; ++j) s[j] += w[j];
        int* zeros = zeros_.data() + static_cast<std::size_t>(t) * r_;
        std::uint64_t* mask = mask_.data() + static_cast<std::size_t>(t) * words_;
        if (count_[static_cast<std::size_t>(t)] == 0) {
            bits_copy(mask, packed_.row(i), words_);
            for (std::size_t p = 0; p < r_; ++p) zeros[p] = packed_.test(i, p) ? 0 : 1;
            full_[static_cast<std::size_t>(t)] = bits_popcount(mask, words_);
        } else {
            for (std::size_t p = 0; p < r_; ++p) {
                if (!packed_.test(i, p)) {
                    if (zeros[p]++ == 0) {
                        mask[p >> 6] &= ~(std::uint64_t{1} << (p & 63));
                        --full_[static_cast<std::size_t>(t)];
                    }
                }
            }
        }
        ++count_[static_cast<std::size_t>(t)];
        assignment_[i] = t + 1;
    }

    void remove_member(std::size_t i, int t) {
        const double* w = W_.row(i);
        double* s = sum_.data() + static_cast<std::size_t>(t) * m_;
        comp_ -= count_[static_cast<std::size_t>(t)] * squared_norm(w, m_) -
                 2.0 * dot(w, s, m_) + sumsq_[static_cast<std::size_t>(t)];
        sumsq_[static_cast<std::size_t>(t)] -= squared_norm(w, m_);
        for (std::size_t j = 0; j < m_; ++j) s[j] -= w[j];
        int* zeros = zeros_.data() + static_cast<std::size_t>(t) * r_;
        std::uint64_t* mask = mask_.data() + static_cast<std::size_t>(t) * words_;
        for (std::size_t p = 0; p < r_; ++p) {
            if (!packed_.test(i, p)) {
                if (--zeros[p] == 0) {
                    mask[p >> 6] |= std::uint64_t{1} << (p & 63);
                    ++full_[static_cast<std::size_t>(t)];
                }
            }
        }
        --count_[static_cast<std::size_t>(t)];
        assignment_[i] = 0;
    }

    int partition_desc() const {
        int lo = std::numeric_limits<int>::max();
        for (int t = 0; t < k_; ++t) lo = std::min(lo, full_[static_cast<std::size_t>(t)]);
        return lo;
    }

    double add_delta(std::size_t i, int t) const {
        const double* w = W_.row(i);
        const double* s = sum_.data() + static_cast<std::size_t>(t) * m_;
        return count_[static_cast<std::size_t>(t)] * squared_norm(w, m_) -
               2.0 * dot(w, s, m_) + sumsq_[static_cast<std::size_t>(t)];
    }

    double remove_delta(std::size_t i, int t) const {
        // Stats still include i, so the add formula evaluated in place gives
        // exactly the pair sum that removal takes away.
        const double* w = W_.row(i);
        const double* s = sum_.data() + static_cast<std::size_t>(t) * m_;
        return -(count_[static_cast<std::size_t>(t)] * squared_norm(w, m_) -
                 2.0 * dot(w, s, m_) + sumsq_[static_cast<std::size_t>(t)]);
    }

    // Cohort description size if sample i joined cohort t.
    int full_after_add(std::size_t i, int t) const {
        const std::uint64_t* mask = mask_.data() + static_cast<std::size_t>(t) * words_;
        int c = 0;
        for (std::size_t w = 0; w < words_; ++w)
            c += std::popcount(mask[w] & packed_.row(i)[w]);
        return c;
    }

    // Cohort description size after sample i leaves cohort t.
    int full_after_remove(std::size_t i, int t) const {
        const int* zeros = zeros_.data() + static_cast<std::size_t>(t) * r_;
        int c = full_[static_cast<std::size_t>(t)];
        for (std::size_t p = 0; p < r_; ++p)
            if (!packed_.test(i, p) && zeros[p] == 1) ++c;
        return c;
    }

    // --- construction -------------------------------------------------------

    void build_initial(int restart) {
        reset_state();
        std::mt19937_64 rng(splitmix64(seed_ + 0x51ed2701u) ^ splitmix64(restart));
        std::vector<std::size_t> seeds;
        seeds.reserve(k_);
        std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
        seeds.push_back(pick(rng));
        std::vector<bool> is_seed(n_, false);
        is_seed[seeds[0]] = true;
        // Remaining seeds: smallest worst-case tag overlap with those chosen.
        while (static_cast<int>(seeds.size()) < k_) {
            std::size_t best_idx = n_;
            int best_overlap = std::numeric_limits<int>::max();
            for (std::size_t i = 0; i < n_; ++i) {
                if (is_seed[i]) continue;
                int worst = 0;
                for (std::size_t s : seeds) {
                    int ov = 0;
                    for (std::size_t w = 0; w < words_; ++w)
                        ov += std::popcount(packed_.row(i)[w] & packed_.row(s)[w]);
                    worst = std::max(worst, ov);
                }
                if (worst < best_overlap) {
                    best_overlap = worst;
                    best_idx = i;
                }
            }
            seeds.push_back(best_idx);
            is_seed[best_idx] = true;
        }
        for (int t = 0; t < k_; ++t) add_member(seeds[static_cast<std::size_t>(t)], t);
        // Greedy fill: keep the description large, break ties toward the
        // cheaper compactness increase.
        for (std::size_t i = 0; i < n_; ++i) {
            if (is_seed[i]) continue;
            int best_t = 0;
            int best_full = -1;
            double best_cost = std::numeric_limits<double>::infinity();
            for (int t = 0; t < k_; ++t) {
                const int f = full_after_add(i, t);
                const double cost = add_delta(i, t);
                if (f > best_full || (f == best_full && cost < best_cost - tol_)) {
                    best_full = f;
                    best_cost = cost;
                    best_t = t;
                }
            }
            add_member(i, best_t);
        }
    }

    // --- improvement --------------------------------------------------------

    void local_search() {
        const int q_floor = std::max(best_desc_, 0);
        bool improved = true;
        int guard = 0;
        while (improved && guard++ < 10000) {
            improved = false;
            if (out_of_time()) return;
            const int q_target = std::max(q_floor, partition_desc());
            for (std::size_t i = 0; i < n_; ++i) {
                const int from = assignment_[i] - 1;
                if (count_[static_cast<std::size_t>(from)] <= 1) continue;
                const int cur_desc = partition_desc();
                for (int to = 0; to < k_; ++to) {
                    if (to == from) continue;
                    ++moves_;
                    const int new_from_full = full_after_remove(i, from);
                    const int new_to_full = full_after_add(i, to);
                    int new_desc = std::numeric_limits<int>::max();
                    for (int t = 0; t < k_; ++t) {
                        const int f = t == from ? new_from_full
                                   : t == to   ? new_to_full
                                               : full_[static_cast<std::size_t>(t)];
                        new_desc = std::min(new_desc, f);
                    }
                    const double delta = remove_delta(i, from) + add_delta(i, to);
                    const bool lex_better =
                        new_desc > cur_desc || (new_desc == cur_desc && delta < -tol_);
                    const bool constrained_better = new_desc >= q_target && delta < -tol_;
                    if (lex_better || constrained_better) {
                        remove_member(i, from);
                        add_member(i, to);
                        improved = true;
                        break;
                    }
                }
            }
        }
    }

    void offer_candidate() {
        const int desc = partition_desc();
        const Partition canon = canonicalize(assignment_);
        const double comp = comp_;
        bool take = false;
        if (best_assignment_.empty() || desc > best_desc_) {
            take = true;
        } else if (desc == best_desc_) {
            if (comp < best_comp_ - tol_) take = true;
            else if (std::abs(comp - best_comp_) <= tol_ &&
                     canon.assignment() < best_assignment_)
                take = true;
        }
        if (take) {
            best_desc_ = desc;
            best_comp_ = comp;
            best_assignment_ = canon.assignment();
        }
    }

    const Matrix& W_;
    const PackedTags& packed_;
    std::size_t n_;
    std::size_t m_;
    int k_;
    std::size_t r_;
    std::size_t words_;
    double tol_;
    int restarts_;
    std::uint64_t seed_;
    std::optional<Clock::time_point> deadline_;

    std::vector<int> count_;
    std::vector<double> sum_;
    std::vector<double> sumsq_;
    std::vector<int> zeros_; // per cohort and tag, members lacking the tag
    std::vector<std::uint64_t> mask_;
    std::vector<int> full_;
    std::vector<int> assignment_;
    double comp_ = 0.0;

    int best_desc_ = -1;
    double best_comp_ = std::numeric_limits<double>::infinity();
    std::vector<int> best_assignment_;
    std::uint64_t moves_ = 0;
    bool timed_out_ = false;
};

} // namespace

SolveResult solve(const ImportanceMatrix& W, const TagMatrix& D, int k,
                  const SolverOptions& opts) {
    validate_inputs(W, D);
    const auto n = W.samples();
    if (k < 1) throw std::invalid_argument("cohort count must be at least 1");
    if (static_cast<std::size_t>(k) > n)
        throw InfeasibleK("cannot form " + std::to_string(k) + " non-empty cohorts from " +
                          std::to_string(n) + " samples");

    SolveMode mode = opts.mode;
    if (mode == SolveMode::Auto)
        mode = n <= static_cast<std::size_t>(opts.exact_sample_limit) ? SolveMode::Exact
                                                                      : SolveMode::Heuristic;

    std::optional<Clock::time_point> deadline;
    if (opts.time_limit)
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(*opts.time_limit));

    const auto start = Clock::now();
    const PackedTags packed(D);

    auto finish = [&](CohortModel model, bool proven, int q, bool timed,
                      std::uint64_t nodes) {
        const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        return SolveResult{std::move(model), proven, q, timed, nodes, elapsed};
    };

    if (mode == SolveMode::Exact) {
        ExactSearch search(W, packed, k, opts, deadline);
        search.run();
        return finish(build_cohort_model(W, D, Partition(search.best_assignment(), k)),
                      !search.timed_out(), search.best_descriptiveness(), search.timed_out(),
                      search.nodes());
    }
    HeuristicSearch search(W, packed, k, opts, deadline);
    search.run();
    return finish(build_cohort_model(W, D, Partition(search.best_assignment(), k)),
                  false, search.best_descriptiveness(), search.timed_out(),
                  search.moves_evaluated());
}

} // namespace taghort
