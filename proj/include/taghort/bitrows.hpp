#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "taghort/types.hpp"

namespace taghort {

// Tag rows packed into 64-bit words. Cohort descriptions are intersections of
// member rows, so AND and popcount are the inner-loop operations everywhere.
class PackedTags {
public:
    explicit PackedTags(const TagMatrix& D);
    PackedTags(std::size_t n, std::size_t width); // zero-initialized rows

    std::size_t count() const { return n_; }
    std::size_t width() const { return width_; }
    std::size_t words() const { return words_; }

    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
    std::uint64_t* row(std::size_t i) { return bits_.data() + i * words_; }

    void set(std::size_t i, std::size_t p) { row(i)[p >> 6] |= std::uint64_t{1} << (p & 63); }
    bool test(std::size_t i, std::size_t p) const {
        return (row(i)[p >> 6] >> (p & 63)) & 1;
    }

private:
    std::size_t n_ = 0;
    std::size_t width_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

inline void bits_and(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w) dst[w] &= src[w];
}

inline void bits_copy(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w) dst[w] = src[w];
}

inline int bits_popcount(const std::uint64_t* v, std::size_t words) {
    int c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(v[w]);
    return c;
}

// sub is contained in sup bitwise.
inline bool bits_subset(const std::uint64_t* sub, const std::uint64_t* sup, std::size_t words) {
    for (std::size_t w = 0; w < words; ++w)
        if (sub[w] & ~sup[w]) return false;
    return true;
}

inline bool bits_test(const std::uint64_t* v, std::size_t p) {
    return (v[p >> 6] >> (p & 63)) & 1;
}

// Indices of set bits in ascending order.
std::vector<int> bits_to_indices(const std::uint64_t* v, std::size_t width);

} // namespace taghort
