#include "patc/funkmink.hpp"

#include <cmath>
#include <stdexcept>

#include "patc/interp.hpp"

namespace patc {

double funk_forward(const std::function<double(const Vec3&)>& phi, const Vec3& theta,
                    int n_circle) {
    if (n_circle < 4) throw std::invalid_argument("funk_forward: n_circle too small");
    CircleFrame f = great_circle_frame(theta);
    double sum = 0.0;
    for (int q = 0; q < n_circle; ++q)
        sum += phi(circle_point(f, 2.0 * kPi * q / n_circle));
    return sum * 2.0 * kPi / n_circle;
}

double funk_forward(const SphereFunction& phi, const Vec3& theta, int n_circle) {
    return funk_forward(
        [&](const Vec3& a) { return sphere_interpolate(phi, a); }, theta, n_circle);
}

std::optional<Vec2> chart_point(const Vec3& alpha, int axis) {
    double a1, a2, a3;
    switch (axis) {
        case 1: a1 = alpha.y; a2 = alpha.z; a3 = alpha.x; break;
        case 2: a1 = alpha.z; a2 = alpha.x; a3 = alpha.y; break;
        case 3: a1 = alpha.x; a2 = alpha.y; a3 = alpha.z; break;
        default: throw std::invalid_argument("chart_point: axis must be 1, 2 or 3");
    }
    if (std::abs(a3) < 1e-12) return std::nullopt;
    return Vec2{a1 / a3, a2 / a3};
}

namespace {

// Direction whose permuted coordinates are (omega, -s)/sqrt(1+s^2) for the
// chart axis, undoing the cyclic permutation used by chart_point.
Vec3 sinogram_dir(int axis, double c, double sn, double s) {
    double inv = 1.0 / std::sqrt(1.0 + s * s);
    double p1 = c * inv, p2 = sn * inv, p3 = -s * inv;
    switch (axis) {
        case 1: return {p3, p1, p2};
        case 2: return {p2, p3, p1};
        default: return {p1, p2, p3};
    }
}

} // namespace

Sinogram2D funk_to_sinogram(const SphereFunction& F, int axis, int n_omega, int n_s,
                            double s_max) {
    if (axis < 1 || axis > 3) throw std::invalid_argument("funk_to_sinogram: bad axis");
    Sinogram2D sino(n_omega, n_s, s_max);
    for (int i = 0; i < n_omega; ++i) {
        double ang = sino.angle(i);
        double c = std::cos(ang), sn = std::sin(ang);
        for (int j = 0; j < n_s; ++j) {
            double s = sino.offset(j);
            Vec3 theta = sinogram_dir(axis, c, sn, s);
            sino.at(i, j) = sphere_interpolate(F, theta) / std::sqrt(1.0 + s * s);
        }
    }
    return sino;
}

PlaneGrid funk_invert_axis(const SphereFunction& F, int axis, int n_plane, double x_max,
                           int n_omega, int n_s, double s_max) {
    return fbp_invert(funk_to_sinogram(F, axis, n_omega, n_s, s_max), n_plane, x_max);
}

namespace {

double plane_sample(const PlaneGrid& p, const Vec2& u, bool* inside) {
    if (std::abs(u.x) > p.x_max || std::abs(u.y) > p.x_max) {
        *inside = false;
        return 0.0;
    }
    *inside = true;
    double fu = (u.x + p.x_max) / p.dx();
    double fv = (u.y + p.x_max) / p.dx();
    int i0 = std::min(int(fu), p.n - 2);
    int j0 = std::min(int(fv), p.n - 2);
    double a = fu - i0, b = fv - j0;
    return p.at(i0, j0) * (1 - a) * (1 - b) + p.at(i0 + 1, j0) * a * (1 - b) +
           p.at(i0, j0 + 1) * (1 - a) * b + p.at(i0 + 1, j0 + 1) * a * b;
}

} // namespace

SphereFunction funk_invert_stabilized(const SphereFunction& F, const FunkInvertParams& params,
                                      FunkInvertStats* stats) {
    if (params.k < 0 || params.k % 2 != 0)
        throw std::invalid_argument("funk_invert_stabilized: k must be even and >= 0");
    double s_max = params.s_max > 0.0 ? params.s_max : 1.0 / std::tan(F.grid.polar_min);

    PlaneGrid plane[3];
    for (int axis = 1; axis <= 3; ++axis)
        plane[axis - 1] = funk_invert_axis(F, axis, params.n_plane, params.x_max,
                                           params.n_omega, params.n_s, s_max);

    SphereFunction out(F.grid);
    std::size_t dropped = 0;
    for (int i = 0; i < F.grid.n_polar; ++i) {
        for (int j = 0; j < F.grid.n_az; ++j) {
            Vec3 alpha = F.grid.dir(i, j);
            double comps[3] = {alpha.x, alpha.y, alpha.z};
            double num = 0.0, den = 0.0;
            int kept = 0;
            for (int axis = 1; axis <= 3; ++axis) {
                auto u = chart_point(alpha, axis);
                if (!u) {
                    ++dropped;
                    continue;
                }
                bool inside = false;
                double val = plane_sample(plane[axis - 1], *u, &inside);
                if (!inside) {
                    ++dropped;
                    continue;
                }
                double ai = comps[axis - 1];
                double wk = 1.0;
                for (int e = 0; e < params.k; ++e) wk *= ai;
                num += wk * val;
                den += wk * ai * ai;
                ++kept;
            }
            if (kept == 0)
                throw std::runtime_error("funk_invert_stabilized: node not covered by any chart");
            out.at(i, j) = num / (2.0 * den);
        }
    }
    if (stats) stats->dropped_contributions = dropped;
    return out;
}

} // namespace patc
