#pragma once

#include <cstddef>
#include <vector>

#include "patc/funkmink.hpp"
#include "patc/grids.hpp"

namespace patc {

// Running time average g(theta, t) = (1/t) Integral_0^t P(theta, tau) dtau by
// cumulative trapezoid; g(theta, 0) = 0. Requires P(., 0) = 0.
DetectorData time_average(const DetectorData& P);

// One application of d/dt (t u(t)) on a uniform grid with t_k = k dt:
// central differences inside, one-sided second order at the ends.
std::vector<double> dt_t_filter(const std::vector<double>& u, double dt);

struct BackprojectStats {
    std::size_t t_out_of_range = 0; // zero-extended reads beyond the time grid
};

// Inversion of the spherical Radon transform,
//   f(x) = -(r_det/8pi^2) Integral_{S^2} [d_t t d_t t q(alpha,t) / t]
//                                        at t = |r_det alpha - x| dS(alpha),
// by sphere quadrature over the data grid: trapezoid in polar with
// sin(polar) area weights, uniform azimuth, and the lower hemisphere supplied
// by evenness (each node also contributes its mirror's term at
// t = |r_det alpha + x|). Voxels with |x| >= r_det are set to 0.
VolumeGrid fpr_backprojection(const DetectorData& q, int vol_n, double half_width,
                              int threads = 1, BackprojectStats* stats = nullptr);

// Same backprojection applied to boundary pressure with a single d_t(t .)
// filter pass and scale -(r_det/2pi); follows from t R_S f = 4pi
// Integral_0^t p dtau.
VolumeGrid pressure_backprojection(const DetectorData& p, int vol_n, double half_width,
                                   int threads = 1, BackprojectStats* stats = nullptr);

struct PipelineParams {
    FunkInvertParams funk;
    int vol_n = 80;
    double half_width = 1.0;
    int threads = 1;
};

struct PipelineDiagnostics {
    std::size_t chart_dropped = 0;   // chart evaluations discarded in stage 1
    std::size_t t_out_of_range = 0;  // zero-extended time reads in stage 2
};

struct PipelineResult {
    VolumeGrid volume;
    DetectorData boundary_pressure; // recovered p(r_det alpha, t), stage-1 output
    PipelineDiagnostics diagnostics;
};

// Full reconstruction: per time slice p(., t) = 2pi * stabilized Funk
// inversion of P(., t) (the 2pi undoes the 1/2pi in the detector average),
// then pressure backprojection to the volume.
PipelineResult reconstruct_pipeline(const DetectorData& P, const PipelineParams& params);

} // namespace patc
