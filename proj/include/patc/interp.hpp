#pragma once

#include <cmath>

#include "patc/grids.hpp"

namespace patc {

// Bilinear interpolation of sphere-grid data at an arbitrary unit direction.
// `value(i, j)` supplies the sample at polar index i, azimuth index j.
// Azimuth wraps periodically. On hemisphere grids directions below the
// equator are reflected through the origin (the data is treated as even), and
// polar angles inside the missing cap [0, polar_min) are clamped to the first
// ring.
template <class F>
double sphere_interpolate(const SphereGrid& g, const Vec3& dir, F&& value) {
    double z = dir.z < -1.0 ? -1.0 : (dir.z > 1.0 ? 1.0 : dir.z);
    double polar = std::acos(z);
    double az = std::atan2(dir.y, dir.x);
    if (g.hemisphere() && polar > 0.5 * kPi) {
        polar = kPi - polar;
        az += kPi;
    }
    if (az < 0.0) az += 2.0 * kPi;
    if (az >= 2.0 * kPi) az -= 2.0 * kPi;

    double u = (polar - g.polar_min) / g.dpolar();
    int i0 = int(std::floor(u));
    if (i0 < 0) { i0 = 0; u = 0.0; }
    if (i0 > g.n_polar - 2) { i0 = g.n_polar - 2; u = double(g.n_polar - 1); }
    double fu = u - i0;
    if (fu < 0.0) fu = 0.0;
    if (fu > 1.0) fu = 1.0;

    double v = az / g.dazimuth();
    int j0 = int(std::floor(v));
    double fv = v - j0;
    if (j0 >= g.n_az) { j0 = 0; fv = 0.0; }
    int j1 = (j0 + 1) % g.n_az;

    double a = value(i0, j0) * (1.0 - fv) + value(i0, j1) * fv;
    double b = value(i0 + 1, j0) * (1.0 - fv) + value(i0 + 1, j1) * fv;
    return a * (1.0 - fu) + b * fu;
}

inline double sphere_interpolate(const SphereFunction& f, const Vec3& dir) {
    return sphere_interpolate(f.grid, dir, [&](int i, int j) { return f.at(i, j); });
}

// Interpolates one time slice of detector-sphere data.
inline double sphere_interpolate_slice(const DetectorData& d, int k, const Vec3& dir) {
    return sphere_interpolate(d.grid.sphere, dir, [&](int i, int j) { return d.at(i, j, k); });
}

} // namespace patc
