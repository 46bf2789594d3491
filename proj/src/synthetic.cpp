#include "taghort/synthetic.hpp"

#include <cmath>
#include <random>

#include "taghort/errors.hpp"

namespace taghort {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double draw(std::mt19937_64& rng, const AxisRange& range) {
    if (range.lo == range.hi) return range.lo;
    return std::uniform_real_distribution<double>(range.lo, range.hi)(rng);
}

void check_range(const AxisRange& range, const char* what) {
    if (!(range.lo <= range.hi))
        throw Error(std::string("two-region fixture: ") + what + " range is inverted");
}

} // namespace

TwoRegionSpec TwoRegionSpec::defaults() {
    TwoRegionSpec spec;
    spec.region_low = {{10.0, 40.0}, {10.0, 40.0}, {-1.0, 1.0}};
    spec.region_high = {{60.0, 90.0}, {60.0, 90.0}, {2.0, -1.0}};
    spec.threshold = 50.0;
    return spec;
}

TwoRegionData generate(const TwoRegionSpec& spec) {
    if (spec.n_per_region < 1)
        throw Error("two-region fixture needs at least one sample per region");
    check_range(spec.region_low.axis1, "low region axis-1");
    check_range(spec.region_low.axis2, "low region axis-2");
    check_range(spec.region_high.axis1, "high region axis-1");
    check_range(spec.region_high.axis2, "high region axis-2");
    if (spec.region_low.axis1.hi > spec.threshold ||
        spec.region_high.axis1.lo < spec.threshold)
        throw Error("two-region fixture: threshold must separate the regions on axis 1");
    if (spec.noise_level < 0.0) throw Error("two-region fixture: negative noise level");
    bool sign_flip = false;
    for (std::size_t j = 0; j < 2; ++j)
        sign_flip = sign_flip ||
                    spec.region_low.weights[j] * spec.region_high.weights[j] < 0.0;
    if (!sign_flip)
        throw Error("two-region fixture: regional weights must differ in sign somewhere");

    const std::size_t n = 2 * spec.n_per_region;
    std::mt19937_64 rng(mix(spec.rng_seed));

    Matrix x(n, 2);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool low = i < spec.n_per_region;
        const RegionSpec& region = low ? spec.region_low : spec.region_high;
        x(i, 0) = draw(rng, region.axis1);
        x(i, 1) = draw(rng, region.axis2);
        labels[i] = low ? 1 : 2;
    }

    double mu[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        mu[0] += x(i, 0);
        mu[1] += x(i, 1);
    }
    mu[0] /= static_cast<double>(n);
    mu[1] /= static_cast<double>(n);

    // Exact attribution for a regional linear model with independent features:
    // each coordinate contributes its weight times its offset from the mean.
    Matrix w(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const RegionSpec& region = labels[i] == 1 ? spec.region_low : spec.region_high;
        for (std::size_t j = 0; j < 2; ++j)
            w(i, j) = region.weights[j] * (x(i, j) - mu[j]);
    }
    if (spec.noise_level > 0.0) {
        std::normal_distribution<double> noise(0.0, spec.noise_level);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < 2; ++j) w(i, j) += noise(rng);
    }

    TwoRegionData data{
        {}, ImportanceMatrix(std::move(w), {spec.axis_names[0], spec.axis_names[1]}),
        std::move(labels)};
    std::vector<double> axis1(n), axis2(n);
    for (std::size_t i = 0; i < n; ++i) {
        axis1[i] = x(i, 0);
        axis2[i] = x(i, 1);
    }
    data.features.add_continuous(spec.axis_names[0], std::move(axis1));
    data.features.add_continuous(spec.axis_names[1], std::move(axis2));
    return data;
}

} // namespace taghort
