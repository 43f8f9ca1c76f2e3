#pragma once

#include "patc/grids.hpp"
#include "patc/phantom.hpp"

namespace patc {

// Circle-averaged detector signal
//   P(theta, t) = (1/2pi) Integral_{alpha . theta = 0} p(r_det alpha, t) dS(alpha)
// with the free-space pressure of the phantom, discretized by the n_circle
// point trapezoid rule on each great circle.
struct ForwardOptions {
    int n_circle = 100;
    int threads = 1;
};

DetectorData detector_signal(const PhantomSpec& spec, const SphereTimeGrid& grid,
                             const ForwardOptions& opts = {});

// Pointwise boundary pressure p(r_det alpha, t) on the same grid.
DetectorData boundary_pressure_data(const PhantomSpec& spec, const SphereTimeGrid& grid,
                                    int threads = 1);

// Spherical Radon transform R_S f(center, t) = Integral_{S^2} f(center + t b) dS(b).
// The numeric version uses a Gauss-Legendre x uniform product rule with
// `order` nodes in the polar direction and 2*order in azimuth; the exact
// version integrates the radial profiles in closed form.
double spherical_radon_numeric(const PhantomSpec& spec, const Vec3& center, double t, int order);
double spherical_radon_exact(const PhantomSpec& spec, const Vec3& center, double t);

// R_S f sampled over grid nodes, center = r_det * alpha, radius = time.
DetectorData spherical_radon_data(const PhantomSpec& spec, const SphereTimeGrid& grid,
                                  bool exact = true, int order = 64, int threads = 1);

// R_P f = F(R_S f): great-circle integrals of R_S f slice by slice. With
// exact_rs the integrand is evaluated in closed form at the circle nodes;
// otherwise R_S is first sampled on the grid by quadrature and the circle
// integral interpolates those samples.
struct RpOptions {
    int n_circle = 100;
    bool exact_rs = true;
    int quad_order = 64;
    int threads = 1;
};

DetectorData rp_numeric(const PhantomSpec& spec, const SphereTimeGrid& grid,
                        const RpOptions& opts = {});

// Applies (1/8pi^2) d/dt (t u(t)) sample-wise to detector-sphere data using
// central differences in t (one-sided second order at the ends). Turns R_P f
// into the detector signal P.
DetectorData rp_to_detector(const DetectorData& rp);

} // namespace patc
