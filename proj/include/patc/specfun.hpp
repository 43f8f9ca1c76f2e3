#pragma once

#include <functional>
#include <vector>

#include "patc/geometry.hpp"

namespace patc {

// Legendre polynomial P_l(x) by the three-term recurrence.
double legendre_p(int l, double x);

// Associated Legendre P_l^m(x) for 0 <= m <= l (Condon-Shortley phase omitted;
// we only use it inside the real harmonics where the normalization absorbs it).
double assoc_legendre(int l, int m, double x);

// Real orthonormal spherical harmonic of degree l and order m, |m| <= l:
//   m = 0: sqrt((2l+1)/4pi) P_l(cos th)
//   m > 0: sqrt(2) N_lm P_l^m(cos th) cos(m ph)
//   m < 0: sqrt(2) N_l|m| P_l^|m|(cos th) sin(|m| ph)
double real_sph_harm(int l, int m, const Vec3& dir);

// Standard spherical Bessel j_n(t), stable for small and large arguments.
double sph_bessel(int n, double t);

// Bessel function of half-integer order, J_{m+1/2}(t) = sqrt(2t/pi) j_m(t).
double bessel_j_half(int m, double t);

// Normalized Bessel function j_nu(u) = 2^nu Gamma(nu+1) J_nu(u) / u^nu with
// nu = m + 1/2, so j_nu(0) = 1. For m = 0 this is sin(u)/u.
double normalized_bessel_half(int m, double u);

// First `count` positive zeros of J_{m+1/2}, ascending.
std::vector<double> bessel_j_half_zeros(int m, int count);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Multiplier of the Funk-Hecke theorem in three dimensions for a zonal kernel
// h(cos gamma) acting on degree-m harmonics:
//   c(3, m) = 2 pi Integral_{-1}^{1} h(t) P_m(t) dt.
// Integrated adaptively; throws if the requested tolerance is not reached.
double funk_hecke_coeff(int m, const std::function<double(double)>& h, double tol = 1e-10);

} // namespace patc
