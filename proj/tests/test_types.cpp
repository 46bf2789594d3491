#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "taghort/errors.hpp"
#include "taghort/types.hpp"

using namespace taghort;

namespace {

ImportanceMatrix small_w(std::size_t n, std::size_t m) {
    Matrix values(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) values(i, j) = static_cast<double>(i * m + j);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < m; ++j) names.push_back("f" + std::to_string(j));
    return ImportanceMatrix(std::move(values), std::move(names));
}

TagMatrix small_d(std::size_t n, std::size_t r) {
    std::vector<std::uint8_t> bits(n * r, 0);
    for (std::size_t i = 0; i < n; ++i) bits[i * r + i % r] = 1;
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < r; ++p) labels.push_back("t" + std::to_string(p));
    return TagMatrix(n, r, std::move(bits), std::move(labels));
}

} // namespace

TEST_CASE("validate_inputs accepts well-formed pairs") {
    CHECK_NOTHROW(validate_inputs(small_w(3, 2), small_d(3, 4)));
}

TEST_CASE("validate_inputs rejects row mismatches") {
    CHECK_THROWS_AS(validate_inputs(small_w(3, 2), small_d(4, 4)), DimensionMismatch);
}

TEST_CASE("validate_inputs rejects empty training data") {
    const ImportanceMatrix W(Matrix(0, 2), {"a", "b"});
    const TagMatrix D(0, 2, {}, {"t0", "t1"});
    CHECK_THROWS_AS(validate_inputs(W, D), DimensionMismatch);
}

TEST_CASE("non-finite importances are rejected") {
    Matrix values(2, 2);
    values(1, 1) = std::nan("");
    CHECK_THROWS_AS(ImportanceMatrix(values, {"a", "b"}), NonFinite);
    values(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(ImportanceMatrix(values, {"a", "b"}), NonFinite);
}

TEST_CASE("tag entries outside {0,1} are rejected") {
    CHECK_THROWS_AS(TagMatrix(1, 2, {1, 2}, {"a", "b"}), NonBinary);
}

TEST_CASE("duplicate names are rejected") {
    Matrix values(1, 2, 0.0);
    CHECK_THROWS_AS(ImportanceMatrix(values, {"x", "x"}), Error);
    CHECK_THROWS_AS(TagMatrix(1, 2, {0, 1}, {"t", "t"}), Error);
}

TEST_CASE("canonicalize relabels by first occurrence") {
    CHECK(canonicalize({2, 1, 1}).assignment() == std::vector<int>{1, 2, 2});
    CHECK(canonicalize({1, 2, 2}).assignment() == std::vector<int>{1, 2, 2});
    CHECK(canonicalize({3, 1, 3, 2}).assignment() == std::vector<int>{1, 2, 1, 3});
    CHECK(canonicalize({7, 7, 7}).k() == 1);
    CHECK_THROWS_AS(canonicalize({}), EmptyCohort);
}

TEST_CASE("partition constructor enforces the invariants") {
    CHECK_NOTHROW(Partition({1, 2, 2}, 2));
    CHECK_THROWS_AS(Partition({1, 1}, 2), EmptyCohort);       // unused label
    CHECK_THROWS_AS(Partition({2, 1}, 2), EmptyCohort);       // not first-occurrence ordered
    CHECK_THROWS_AS(Partition({1, 3, 2}, 3), EmptyCohort);    // 3 appears before 2
    CHECK_THROWS_AS(Partition({}, 1), EmptyCohort);
    CHECK(Partition({1, 2, 1}, 2).cohort_sizes() == std::vector<int>{2, 1});
}

TEST_CASE("canonicalize is idempotent and preserves co-membership") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<int> raw(n);
        for (auto& v : raw) v = static_cast<int>(1 + rng() % 5);
        const Partition once = canonicalize(raw);
        const Partition twice = canonicalize(once.assignment());
        CHECK(once.assignment() == twice.assignment());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                CHECK((raw[i] == raw[j]) == (once.assignment()[i] == once.assignment()[j]));
        CHECK(is_canonical(once.assignment()));
        // First occurrence of t strictly precedes first occurrence of t+1.
        for (int t = 1; t < once.k(); ++t) {
            std::size_t first_t = n;
            std::size_t first_next = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (once.assignment()[i] == t && first_t == n) first_t = i;
                if (once.assignment()[i] == t + 1 && first_next == n) first_next = i;
            }
            CHECK(first_t < first_next);
        }
    }
}
