#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "patc/grids.hpp"

namespace patc {

// Max over on-grid mirror pairs (theta, -theta) and time samples of
// |g(theta,t) - g(-theta,t)|, normalized by max |g|; 0/0 counts as 0.
// Full-sphere grids pair every node; hemisphere grids only have the equator
// ring to compare (its antipodes lie on the grid when n_az is even), the rest
// being even by storage convention. `pairs` receives how many node pairs were
// actually compared.
double check_even(const DetectorData& data, std::size_t* pairs = nullptr);

// Max over nodes of |trapezoid integral of P dt over the stored window|,
// normalized by max |P|; 0/0 counts as 0. Data in range has the integral
// vanish over [0, 2 r_det].
double check_zero_integral(const DetectorData& P);

// Moment transform for spherical-mean-type data g:
//   Hg(theta, lambda) = Integral g(theta,t) j(lambda t) t^2 dt,
// j(u) = sin(u)/u, trapezoid in t.
SphereFunction moment_transform(const DetectorData& g, double lambda);

// Moment transform for detector data P:
//   HP(theta, lambda) = Integral (Integral_0^t P(theta,tau) dtau)
//                                j(lambda t) t dt,
// cumulative trapezoid inside, trapezoid outside. Assumes P(., 0) = 0.
SphereFunction moment_transform_P(const DetectorData& P, double lambda);

struct MomentEntry {
    int l = 0;
    int m = 0;
    int zero_index = 0; // 1-based index into the zeros of J_{l+1/2}
    double lambda = 0.0;
    double residual = 0.0; // |coefficient| / max |coefficient| over a lambda scan
};

struct RangeReport {
    DataKind kind = DataKind::detector;
    double evenness_residual = 0.0;
    std::size_t evenness_pairs = 0;
    double zero_integral_residual = 0.0; // detector data only, 0 otherwise
    std::vector<MomentEntry> moments;
    double threshold = 0.0; // verdict threshold, filled in by the caller

    double max_moment_residual() const;
    double max_residual() const;
    bool passes(double thr) const;
};

// Evaluates the range conditions: evenness, zero time-integral (detector
// data), and the vanishing of spherical-harmonic moment coefficients
//   c_{l,m}(lambda) = Integral_{S^2} Hg(theta, lambda) Y_l^m(theta) dS
// at the first n_zeros zeros of J_{l+1/2}, for all l <= l_max, |m| <= l.
// Hemisphere grids contribute each node and its antipode (even extension).
// Residuals are normalized per (l, m) by the max of |c_{l,m}| over a scan of
// 50 lambda values on (0, lambda_last + pi]; 0/0 counts as 0.
RangeReport range_report(const DetectorData& data, int l_max, int n_zeros);

// CSV with header l,m,zero_index,lambda,residual; 17 significant digits.
std::string range_report_csv(const RangeReport& report);

// Human-readable multi-line summary with the verdict for report.threshold.
std::string range_report_summary(const RangeReport& report);

} // namespace patc
