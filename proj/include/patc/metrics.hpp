#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "patc/grids.hpp"
#include "patc/phantom.hpp"

namespace patc {

// Trilinear sample of a volume at a point, clamped to the grid.
double volume_sample(const VolumeGrid& vol, const Vec3& x);

struct BallMetrics {
    double center_value = 0.0;  // reconstructed value at the component center
    double plateau_mean = 0.0;  // mean over the flat core of the ball
    std::size_t plateau_voxels = 0;
};

struct VolumeMetrics {
    double rel_l2_upper_half = 0.0; // over voxels with |x| < r_det, x3 >= 0
    double max_abs_error = 0.0;     // over the same region
    std::vector<BallMetrics> balls; // one per listed component (mirrors excluded)
};

// Compares a volume against the phantom evaluated at voxel centers. The
// plateau of a smooth ball is |x - c| <= inner radius; for a sharp ball the
// inner half |x - c| <= outer radius / 2 is used to stay clear of the jump.
VolumeMetrics volume_metrics(const VolumeGrid& vol, const PhantomSpec& spec, double r_det);

// name,index,value rows; 17 significant digits.
std::string metrics_csv(const VolumeMetrics& m);

} // namespace patc
