#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "patc/geometry.hpp"

namespace patc {

inline constexpr double kPi = 3.14159265358979323846;

// Angular grid on the detector sphere. Polar angles are uniform on
// [polar_min, polar_max] including both endpoints; azimuths are uniform on
// [0, 2*pi) excluding the endpoint. polar_max = pi/2 gives the upper
// hemisphere used for even data; full-sphere grids (polar_max = pi) only
// appear in memory, never on disk.
struct SphereGrid {
    int n_polar = 50;
    int n_az = 200;
    double polar_min = kPi / 25.0;
    double polar_max = kPi / 2.0;
    double r_det = 1.0;

    double polar(int i) const {
        if (n_polar == 1) return polar_min;
        return polar_min + (polar_max - polar_min) * i / (n_polar - 1);
    }
    double azimuth(int j) const { return 2.0 * kPi * j / n_az; }
    double dpolar() const { return n_polar > 1 ? (polar_max - polar_min) / (n_polar - 1) : 0.0; }
    double dazimuth() const { return 2.0 * kPi / n_az; }
    Vec3 dir(int i, int j) const { return sphere_dir(polar(i), azimuth(j)); }
    bool hemisphere() const { return polar_max < 0.5 * kPi + 1e-12; }
    std::size_t nodes() const { return std::size_t(n_polar) * n_az; }

    void validate() const {
        if (n_polar < 2 || n_az < 2) throw std::invalid_argument("sphere grid too small");
        if (!(polar_min > 0.0) || !(polar_max > polar_min) || polar_max > kPi)
            throw std::invalid_argument("bad polar range");
        if (!(r_det > 0.0)) throw std::invalid_argument("r_det must be positive");
    }
};

struct SphereTimeGrid {
    SphereGrid sphere;
    int n_t = 50;
    double t_max = 2.0;

    double time(int k) const { return n_t > 1 ? t_max * k / (n_t - 1) : 0.0; }
    double dt() const { return n_t > 1 ? t_max / (n_t - 1) : 0.0; }
    std::size_t samples() const { return sphere.nodes() * n_t; }

    void validate() const {
        sphere.validate();
        if (n_t < 2) throw std::invalid_argument("need at least two time samples");
        if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    }
};

// What a detector-sphere dataset holds. The tag is stored in the file header
// so downstream commands can check they were fed the right kind of data.
enum class DataKind : std::uint8_t {
    detector = 0,         // P: circle-averaged boundary pressure
    funk = 1,             // Funk-Minkowski image of a sphere function
    spherical_radon = 2,  // R_S f over center directions and radii
    boundary_pressure = 3,// pointwise pressure p(r_det alpha, t)
    time_averaged = 4,    // g: running time average of detector data
};

// Samples over (polar, azimuth, time), time fastest.
struct DetectorData {
    SphereTimeGrid grid;
    DataKind kind = DataKind::detector;
    std::vector<double> values;

    DetectorData() = default;
    DetectorData(const SphereTimeGrid& g, DataKind k)
        : grid(g), kind(k), values(g.samples(), 0.0) {}

    std::size_t index(int i, int j, int k) const {
        return (std::size_t(i) * grid.sphere.n_az + j) * grid.n_t + k;
    }
    double& at(int i, int j, int k) { return values[index(i, j, k)]; }
    double at(int i, int j, int k) const { return values[index(i, j, k)]; }
};

// Single function on the sphere grid (one time slice worth of data).
struct SphereFunction {
    SphereGrid grid;
    std::vector<double> values;

    SphereFunction() = default;
    explicit SphereFunction(const SphereGrid& g) : grid(g), values(g.nodes(), 0.0) {}

    std::size_t index(int i, int j) const { return std::size_t(i) * grid.n_az + j; }
    double& at(int i, int j) { return values[index(i, j)]; }
    double at(int i, int j) const { return values[index(i, j)]; }
};

// 2D Radon data: angles uniform on [0, pi) excluding the endpoint, offsets
// uniform on [-s_max, s_max] including both ends. Offset index fastest.
struct Sinogram2D {
    int n_omega = 0;
    int n_s = 0;
    double s_max = 0.0;
    std::vector<double> values;

    Sinogram2D() = default;
    Sinogram2D(int nw, int ns, double sm)
        : n_omega(nw), n_s(ns), s_max(sm), values(std::size_t(nw) * ns, 0.0) {
        if (nw < 1 || ns < 2 || !(sm > 0.0)) throw std::invalid_argument("bad sinogram shape");
    }

    double angle(int i) const { return kPi * i / n_omega; }
    double offset(int j) const { return -s_max + 2.0 * s_max * j / (n_s - 1); }
    double ds() const { return 2.0 * s_max / (n_s - 1); }
    double& at(int i, int j) { return values[std::size_t(i) * n_s + j]; }
    double at(int i, int j) const { return values[std::size_t(i) * n_s + j]; }
};

// Square nodal grid on [-x_max, x_max]^2, second coordinate fastest.
struct PlaneGrid {
    int n = 0;
    double x_max = 0.0;
    std::vector<double> values;

    PlaneGrid() = default;
    PlaneGrid(int n_, double xm) : n(n_), x_max(xm), values(std::size_t(n_) * n_, 0.0) {
        if (n_ < 2 || !(xm > 0.0)) throw std::invalid_argument("bad plane grid");
    }

    double coord(int i) const { return -x_max + 2.0 * x_max * i / (n - 1); }
    double dx() const { return 2.0 * x_max / (n - 1); }
    double& at(int i, int j) { return values[std::size_t(i) * n + j]; }
    double at(int i, int j) const { return values[std::size_t(i) * n + j]; }
};

// Cubic voxel grid on [-half_width, half_width]^3, cell centers, z fastest.
struct VolumeGrid {
    int n = 0;
    double half_width = 1.0;
    std::vector<double> values;

    VolumeGrid() = default;
    VolumeGrid(int n_, double hw)
        : n(n_), half_width(hw), values(std::size_t(n_) * n_ * n_, 0.0) {
        if (n_ < 1 || !(hw > 0.0)) throw std::invalid_argument("bad volume grid");
    }

    double voxel() const { return 2.0 * half_width / n; }
    double coord(int i) const { return -half_width + (i + 0.5) * voxel(); }
    std::size_t index(int i, int j, int k) const {
        return (std::size_t(i) * n + j) * n + k;
    }
    double& at(int i, int j, int k) { return values[index(i, j, k)]; }
    double at(int i, int j, int k) const { return values[index(i, j, k)]; }
};

// Relative L2 distance used throughout the tests. Zero reference with zero
// input counts as a perfect match.
inline double rel_l2(const std::vector<double>& got, const std::vector<double>& ref) {
    if (got.size() != ref.size()) throw std::invalid_argument("size mismatch in rel_l2");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        double d = got[i] - ref[i];
        num += d * d;
        den += ref[i] * ref[i];
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

} // namespace patc
