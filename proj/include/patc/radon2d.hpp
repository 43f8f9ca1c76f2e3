#pragma once

#include <cstddef>
#include <vector>

#include "patc/grids.hpp"

namespace patc {

// Line integral of plane data along the line x . omega = s, by uniform
// sampling in the tangential parameter with bilinear interpolation; samples
// outside the grid read 0. Step is at most the grid spacing.
double radon2d_forward(const PlaneGrid& plane, const Vec2& omega, double s);

// Full sinogram of plane data (angles in [0, pi), offsets in [-s_max, s_max]).
Sinogram2D radon2d_forward_all(const PlaneGrid& plane, int n_omega, int n_s, double s_max);

// Offset derivative: central differences inside, one-sided second order at
// the ends.
Sinogram2D d_ds(const Sinogram2D& sino);

// Discrete Hilbert transform on a uniform grid,
//   H[u]_i = (1/pi) sum_j u_j w_{i-j},  w_k = ln|(k+1/2)/(k-1/2)|, w_0 = 0,
// the exact principal-value integral of 1/s over cells. The caller is
// responsible for the samples decaying toward the grid ends.
std::vector<double> hilbert(const std::vector<double>& u, double ds);

// Applies the Hilbert transform along the offset axis of every angle row.
Sinogram2D hilbert_rows(const Sinogram2D& sino);

// Backprojection R# u(x) = Integral_{S^1} u(omega, x . omega) dS(omega),
// realized as 2 (pi/n_omega) sum over the stored [0, pi) angles (the even
// redundancy supplies the other half) with linear interpolation in s.
// Reads outside [-s_max, s_max] are zero-extended; if out_of_range is given
// it receives the count of such reads.
PlaneGrid backprojection(const Sinogram2D& sino, int n, double x_max,
                         std::size_t* out_of_range = nullptr);

// Filtered backprojection inversion Phi = (1/4pi) R# H d_ds R Phi.
PlaneGrid fbp_invert(const Sinogram2D& sino, int n, double x_max);

} // namespace patc
