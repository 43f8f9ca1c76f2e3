#pragma once

#include <cstdint>

#include "patc/grids.hpp"

namespace patc {

// Adds independent uniform noise on [-level*A, level*A] to every sample,
// A = max |data| over the whole dataset. Draws come from std::mt19937_64
// seeded with `seed`, one per sample in storage (polar-major) order, mapped
// to [0,1) as (rng() >> 11) * 2^-53. Returns A. level = 0 leaves the data
// untouched without consuming random numbers.
double add_uniform_noise(DetectorData& data, double level, std::uint64_t seed);

} // namespace patc
