#include "patc/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace patc {

double add_uniform_noise(DetectorData& data, double level, std::uint64_t seed) {
    if (level < 0.0 || level >= 1.0) throw std::invalid_argument("noise level must be in [0, 1)");

    double amp = 0.0;
    for (double v : data.values) amp = std::max(amp, std::abs(v));
    if (level == 0.0) return amp;

    std::mt19937_64 rng(seed);
    const double scale = level * amp;
    for (double& v : data.values) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        v += scale * (2.0 * u - 1.0);
    }
    return amp;
}

} // namespace patc
