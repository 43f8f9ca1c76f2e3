#include "patc/forward.hpp"

#include <cmath>
#include <stdexcept>

#include "patc/interp.hpp"
#include "patc/parallel.hpp"
#include "patc/specfun.hpp"

namespace patc {

DetectorData detector_signal(const PhantomSpec& spec, const SphereTimeGrid& grid,
                             const ForwardOptions& opts) {
    grid.validate();
    spec.validate(grid.sphere.r_det);
    if (opts.n_circle < 4) throw std::invalid_argument("detector_signal: n_circle too small");
    DetectorData out(grid, DataKind::detector);
    const int nc = opts.n_circle;
    parallel_for(grid.sphere.nodes(), opts.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t node = b; node < e; ++node) {
            int i = int(node / grid.sphere.n_az);
            int j = int(node % grid.sphere.n_az);
            CircleFrame frame = great_circle_frame(grid.sphere.dir(i, j));
            for (int k = 0; k < grid.n_t; ++k) {
                double t = grid.time(k);
                double sum = 0.0;
                for (int q = 0; q < nc; ++q) {
                    Vec3 a = circle_point(frame, 2.0 * kPi * q / nc);
                    sum += phantom_pressure(spec, grid.sphere.r_det * a, t);
                }
                // (1/2pi) * (2pi/nc) * sum
                out.at(i, j, k) = sum / nc;
            }
        }
    });
    return out;
}

DetectorData boundary_pressure_data(const PhantomSpec& spec, const SphereTimeGrid& grid,
                                    int threads) {
    grid.validate();
    spec.validate(grid.sphere.r_det);
    DetectorData out(grid, DataKind::boundary_pressure);
    parallel_for(grid.sphere.nodes(), threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t node = b; node < e; ++node) {
            int i = int(node / grid.sphere.n_az);
            int j = int(node % grid.sphere.n_az);
            Vec3 x = grid.sphere.r_det * grid.sphere.dir(i, j);
            for (int k = 0; k < grid.n_t; ++k)
                out.at(i, j, k) = phantom_pressure(spec, x, grid.time(k));
        }
    });
    return out;
}

double spherical_radon_numeric(const PhantomSpec& spec, const Vec3& center, double t, int order) {
    if (order < 2) throw std::invalid_argument("spherical_radon_numeric: order too small");
    if (t < 0.0) throw std::invalid_argument("spherical_radon_numeric: negative radius");
    if (t == 0.0) return 4.0 * kPi * eval_phantom(spec, center);
    GaussRule gl = gauss_legendre(order);
    int naz = 2 * order;
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
        double ct = gl.nodes[i];
        double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        double ring = 0.0;
        for (int j = 0; j < naz; ++j) {
            double ph = 2.0 * kPi * j / naz;
            Vec3 b{st * std::cos(ph), st * std::sin(ph), ct};
            ring += eval_phantom(spec, center + t * b);
        }
        sum += gl.weights[i] * ring;
    }
    return sum * 2.0 * kPi / naz;
}

namespace {

// Integral_0^w profile(v) dv for the radial profile as a function of squared
// distance v, saturating for w >= outer_radius^2. Feeding it the squared
// integration limits turns the shell integral
//   Integral_{S^2} h(|c - x + t b|) dS(b) = (2pi/(d t)) Integral_{|d-t|}^{d+t} u h(u) du
// into a difference of two evaluations.
double profile_primitive(const BallComponent& b, double w) {
    double R2 = b.outer_radius * b.outer_radius;
    if (b.kind == BallKind::sharp) return w < R2 ? w : R2;
    double r = b.inner_radius, a = b.outer_radius - b.inner_radius;
    double r2 = r * r;
    if (w <= r2) return w;
    if (w >= R2) return r2 + a * r + 0.3 * a * a;
    double xi = (std::sqrt(w) - r) / a;
    double xi2 = xi * xi, xi3 = xi2 * xi, xi4 = xi3 * xi, xi5 = xi4 * xi;
    return r2 + 2.0 * a * (r * xi + 0.5 * a * xi2 - r * xi3 + (0.5 * r - 0.75 * a) * xi4 +
                           0.4 * a * xi5);
}

double rs_ball_exact(const BallComponent& b, const Vec3& center, double t) {
    double d = norm(center - b.center);
    if (t < 1e-12) {
        double s2 = d * d;
        if (s2 >= b.outer_radius * b.outer_radius) return 0.0;
        double prof = b.kind == BallKind::sharp ? 1.0 : smooth_profile(b, s2);
        return 4.0 * kPi * b.amplitude * prof;
    }
    if (d < 1e-12) {
        double prof = b.kind == BallKind::sharp
                          ? (t < b.outer_radius ? 1.0 : 0.0)
                          : smooth_profile(b, t * t);
        return 4.0 * kPi * b.amplitude * prof;
    }
    double lo = std::abs(d - t), hi = d + t;
    double val = profile_primitive(b, hi * hi) - profile_primitive(b, lo * lo);
    return kPi / (d * t) * b.amplitude * val;
}

} // namespace

double spherical_radon_exact(const PhantomSpec& spec, const Vec3& center, double t) {
    double sum = 0.0;
    for (const auto& b : spec.components) {
        sum += rs_ball_exact(b, center, t);
        if (spec.symmetrize) {
            BallComponent m = b;
            m.center = -b.center;
            sum += rs_ball_exact(m, center, t);
        }
    }
    return sum;
}

DetectorData spherical_radon_data(const PhantomSpec& spec, const SphereTimeGrid& grid,
                                  bool exact, int order, int threads) {
    grid.validate();
    spec.validate(grid.sphere.r_det);
    DetectorData out(grid, DataKind::spherical_radon);
    parallel_for(grid.sphere.nodes(), threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t node = b; node < e; ++node) {
            int i = int(node / grid.sphere.n_az);
            int j = int(node % grid.sphere.n_az);
            Vec3 c = grid.sphere.r_det * grid.sphere.dir(i, j);
            for (int k = 0; k < grid.n_t; ++k) {
                double t = grid.time(k);
                out.at(i, j, k) = exact ? spherical_radon_exact(spec, c, t)
                                        : spherical_radon_numeric(spec, c, t, order);
            }
        }
    });
    return out;
}

DetectorData rp_numeric(const PhantomSpec& spec, const SphereTimeGrid& grid,
                        const RpOptions& opts) {
    grid.validate();
    spec.validate(grid.sphere.r_det);
    if (opts.n_circle < 4) throw std::invalid_argument("rp_numeric: n_circle too small");
    DetectorData out(grid, DataKind::funk);
    const int nc = opts.n_circle;
    if (opts.exact_rs) {
        parallel_for(grid.sphere.nodes(), opts.threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t node = b; node < e; ++node) {
                int i = int(node / grid.sphere.n_az);
                int j = int(node % grid.sphere.n_az);
                CircleFrame frame = great_circle_frame(grid.sphere.dir(i, j));
                for (int k = 0; k < grid.n_t; ++k) {
                    double t = grid.time(k);
                    double sum = 0.0;
                    for (int q = 0; q < nc; ++q) {
                        Vec3 a = circle_point(frame, 2.0 * kPi * q / nc);
                        sum += spherical_radon_exact(spec, grid.sphere.r_det * a, t);
                    }
                    out.at(i, j, k) = 2.0 * kPi * sum / nc;
                }
            }
        });
        return out;
    }
    DetectorData rs = spherical_radon_data(spec, grid, false, opts.quad_order, opts.threads);
    parallel_for(grid.sphere.nodes(), opts.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t node = b; node < e; ++node) {
            int i = int(node / grid.sphere.n_az);
            int j = int(node % grid.sphere.n_az);
            CircleFrame frame = great_circle_frame(grid.sphere.dir(i, j));
            for (int k = 0; k < grid.n_t; ++k) {
                double sum = 0.0;
                for (int q = 0; q < nc; ++q)
                    sum += sphere_interpolate_slice(rs, k, circle_point(frame, 2.0 * kPi * q / nc));
                out.at(i, j, k) = 2.0 * kPi * sum / nc;
            }
        }
    });
    return out;
}

DetectorData rp_to_detector(const DetectorData& rp) {
    const auto& g = rp.grid;
    if (g.n_t < 3) throw std::invalid_argument("rp_to_detector: need at least three time samples");
    DetectorData out(g, DataKind::detector);
    double dt = g.dt();
    double c = 1.0 / (8.0 * kPi * kPi);
    for (int i = 0; i < g.sphere.n_polar; ++i)
        for (int j = 0; j < g.sphere.n_az; ++j) {
            auto tu = [&](int k) { return g.time(k) * rp.at(i, j, k); };
            for (int k = 0; k < g.n_t; ++k) {
                double d;
                if (k == 0)
                    d = (-3.0 * tu(0) + 4.0 * tu(1) - tu(2)) / (2.0 * dt);
                else if (k == g.n_t - 1)
                    d = (3.0 * tu(k) - 4.0 * tu(k - 1) + tu(k - 2)) / (2.0 * dt);
                else
                    d = (tu(k + 1) - tu(k - 1)) / (2.0 * dt);
                out.at(i, j, k) = c * d;
            }
        }
    return out;
}

} // namespace patc
