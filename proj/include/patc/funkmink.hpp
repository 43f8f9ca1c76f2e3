#pragma once

#include <functional>
#include <optional>

#include "patc/grids.hpp"
#include "patc/radon2d.hpp"

namespace patc {

// Great-circle integral of phi over the circle orthogonal to theta, uniform
// periodic quadrature with n_circle nodes.
double funk_forward(const std::function<double(const Vec3&)>& phi, const Vec3& theta,
                    int n_circle);

// Same, for gridded data (bilinear sphere interpolation, even extension).
double funk_forward(const SphereFunction& phi, const Vec3& theta, int n_circle);

// Gnomonic chart coordinates of a direction for the given axis (1, 2 or 3):
// the remaining two coordinates in cyclic order divided by alpha_axis.
// Empty when alpha_axis is (numerically) zero.
std::optional<Vec2> chart_point(const Vec3& alpha, int axis);

// Sinogram of the Funk image under the gnomonic reduction for one axis:
//   G(omega, s) = (1 + s^2)^{-1/2} * F((omega, -s)/sqrt(1+s^2))
// with the argument read in the cyclically permuted coordinates, so that the
// chart axis plays the role of the third coordinate.
Sinogram2D funk_to_sinogram(const SphereFunction& F, int axis, int n_omega, int n_s,
                            double s_max);

// Single-axis inversion: fbp_invert of the axis sinogram. The plane value at
// x estimates 2 phi(alpha) alpha_axis^2 with alpha = (x, 1)/sqrt(1+|x|^2) in
// permuted coordinates.
PlaneGrid funk_invert_axis(const SphereFunction& F, int axis, int n_plane, double x_max,
                           int n_omega, int n_s, double s_max);

struct FunkInvertParams {
    int k = 2;           // stabilization weight exponent, must be even
    int n_omega = 360;
    int n_s = 401;
    double s_max = 0.0;  // <= 0 means cot(polar_min) of the input grid
    int n_plane = 256;
    double x_max = 2.5;
};

struct FunkInvertStats {
    std::size_t dropped_contributions = 0; // per-node chart evaluations outside the plane
};

// Stabilized inversion of the Funk-Minkowski transform: all three axis
// inversions combined as
//   phi(alpha) = sum_i alpha_i^k Phi_i(chart_i(alpha)) / (2 sum_i alpha_i^{k+2}),
// where a chart whose coordinates fall outside the plane is dropped for that
// node and the denominator restricted to the kept axes. Throws if some node
// loses all three charts.
SphereFunction funk_invert_stabilized(const SphereFunction& F, const FunkInvertParams& params,
                                      FunkInvertStats* stats = nullptr);

} // namespace patc
