#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "taghort/preprocess.hpp"
#include "taghort/types.hpp"

namespace taghort {

struct AxisRange {
    double lo = 0.0;
    double hi = 0.0; // lo == hi gives a constant axis
};

struct RegionSpec {
    AxisRange axis1;
    AxisRange axis2;
    std::array<double, 2> weights{}; // regional linear model coefficients
};

// Two-region ground-truth fixture: samples drawn uniformly inside each
// region's box, with local importances given by the exact linear attribution
// w_j = v_j * (x_j - mu_j) against the dataset mean mu. The regional weight
// vectors must differ in sign on at least one axis.
struct TwoRegionSpec {
    std::size_t n_per_region = 100;
    RegionSpec region_low;  // below the axis-1 threshold
    RegionSpec region_high; // at or above it
    double threshold = 50.0;
    double noise_level = 0.0; // stddev of additive importance noise
    std::uint64_t rng_seed = 0;
    std::array<std::string, 2> axis_names = {"axis1", "axis2"};

    // Quadrant geometry: one region low on both axes, one high on both, with
    // asymmetric weights so the two importance profiles are distinct.
    static TwoRegionSpec defaults();
};

struct TwoRegionData {
    FeatureTable features;
    ImportanceMatrix importances;
    std::vector<int> region_labels; // 1 = low region, 2 = high region
};

TwoRegionData generate(const TwoRegionSpec& spec);

} // namespace taghort
