#pragma once

#include <string>
#include <vector>

#include "patc/geometry.hpp"
#include "patc/grids.hpp"

namespace patc {

enum class BallKind { sharp, smooth };

// One radially symmetric bump. "sharp" is the indicator of a ball of radius
// outer_radius scaled by amplitude; "smooth" is amplitude times a C^1 radial
// profile that equals 1 for |x - center| <= inner_radius and decays to 0 at
// outer_radius through the cubic blend 1 - 3 xi^2 + 2 xi^3.
struct BallComponent {
    BallKind kind = BallKind::smooth;
    Vec3 center;
    double outer_radius = 0.0;
    double inner_radius = 0.0; // ignored for sharp balls
    double amplitude = 0.0;

    void validate() const;
};

struct PhantomSpec {
    std::vector<BallComponent> components;
    bool symmetrize = true;

    void validate(double r_det) const;

    static PhantomSpec from_json_text(const std::string& text);
    static PhantomSpec from_json_file(const std::string& path);
    std::string to_json_text() const;
};

// Radial profile of a smooth ball at squared distance s2 from its center.
double smooth_profile(const BallComponent& ball, double s2);

// Phantom value at a point; the symmetrized phantom is f(x) + f(-x) over the
// listed components.
double eval_phantom(const PhantomSpec& spec, const Vec3& x);

// Free-space pressure of a single ball at distance d = |x - center| >
// outer_radius and time t >= 0:
//   sharp:  c (d - t) / (2 d) on |d - t| < outer_radius, else 0
//   smooth: c (d - t) / (2 d) * profile((d - t)^2)
// Throws if x is inside the closed support of the ball, where the formula
// does not apply.
double ball_pressure(const BallComponent& ball, const Vec3& x, double t);

// Pressure of the (possibly symmetrized) phantom at a boundary point.
double phantom_pressure(const PhantomSpec& spec, const Vec3& x, double t);

// Phantom sampled on a voxel grid, symmetrization included.
VolumeGrid rasterize_phantom(const PhantomSpec& spec, int n, double half_width);

} // namespace patc
