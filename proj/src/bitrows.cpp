#include "taghort/bitrows.hpp"

namespace taghort {

PackedTags::PackedTags(const TagMatrix& D)
    : n_(D.samples()), width_(D.tags), words_((D.tags + 63) / 64), bits_(n_ * words_, 0) {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t p = 0; p < width_; ++p)
            if (D.at(i, p)) set(i, p);
}

PackedTags::PackedTags(std::size_t n, std::size_t width)
    : n_(n), width_(width), words_((width + 63) / 64), bits_(n * words_, 0) {}

std::vector<int> bits_to_indices(const std::uint64_t* v, std::size_t width) {
    std::vector<int> out;
    for (std::size_t p = 0; p < width; ++p)
        if (bits_test(v, p)) out.push_back(static_cast<int>(p));
    return out;
}

} // namespace taghort
