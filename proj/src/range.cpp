#include "patc/range.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "patc/specfun.hpp"

namespace patc {

namespace {

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Trapezoid weights on the time grid.
double time_weight(int k, int n_t, double dt) {
    return (k == 0 || k == n_t - 1) ? 0.5 * dt : dt;
}

// Sphere-quadrature node weight: trapezoid in polar with sin-polar area
// factor, uniform azimuth.
std::vector<double> node_weights(const SphereGrid& sg) {
    std::vector<double> w(sg.nodes());
    for (int i = 0; i < sg.n_polar; ++i) {
        double wi = std::sin(sg.polar(i)) * sg.dpolar() * sg.dazimuth();
        if (i == 0 || i == sg.n_polar - 1) wi *= 0.5;
        for (int j = 0; j < sg.n_az; ++j) w[std::size_t(i) * sg.n_az + j] = wi;
    }
    return w;
}

} // namespace

double check_even(const DetectorData& data, std::size_t* pairs_out) {
    data.grid.validate();
    const SphereGrid& sg = data.grid.sphere;
    const int n_t = data.grid.n_t;

    std::size_t pairs = 0;
    double worst = 0.0;
    for (int i = 0; i < sg.n_polar; ++i) {
        double mirror_polar = kPi - sg.polar(i);
        int ii = -1;
        if (sg.dpolar() > 0.0) {
            int cand = static_cast<int>(std::lround((mirror_polar - sg.polar_min) / sg.dpolar()));
            if (cand >= 0 && cand < sg.n_polar && std::abs(sg.polar(cand) - mirror_polar) < 1e-9)
                ii = cand;
        }
        if (ii < 0) continue;
        for (int j = 0; j < sg.n_az; ++j) {
            int jj = static_cast<int>(std::lround((sg.azimuth(j) + kPi) / sg.dazimuth())) % sg.n_az;
            if (std::abs(std::remainder(sg.azimuth(jj) - sg.azimuth(j) - kPi, 2.0 * kPi)) > 1e-9)
                continue;
            if (ii < i || (ii == i && jj <= j)) continue; // visit each pair once
            ++pairs;
            for (int k = 0; k < n_t; ++k)
                worst = std::max(worst, std::abs(data.at(i, j, k) - data.at(ii, jj, k)));
        }
    }
    if (pairs_out) *pairs_out = pairs;
    if (worst == 0.0) return 0.0;
    return worst / max_abs(data.values);
}

double check_zero_integral(const DetectorData& P) {
    P.grid.validate();
    const int n_t = P.grid.n_t;
    const double dt = P.grid.dt();
    const std::size_t nodes = P.grid.sphere.nodes();

    double worst = 0.0;
    for (std::size_t node = 0; node < nodes; ++node) {
        const double* col = P.values.data() + node * n_t;
        double acc = 0.0;
        for (int k = 0; k < n_t; ++k) acc += time_weight(k, n_t, dt) * col[k];
        worst = std::max(worst, std::abs(acc));
    }
    if (worst == 0.0) return 0.0;
    return worst / max_abs(P.values);
}

SphereFunction moment_transform(const DetectorData& g, double lambda) {
    g.grid.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("moment_transform needs lambda > 0");
    const int n_t = g.grid.n_t;
    const double dt = g.grid.dt();
    const std::size_t nodes = g.grid.sphere.nodes();

    std::vector<double> kern(n_t);
    for (int k = 0; k < n_t; ++k) {
        double t = g.grid.time(k);
        kern[k] = time_weight(k, n_t, dt) * normalized_bessel_half(0, lambda * t) * t * t;
    }

    SphereFunction out(g.grid.sphere);
    for (std::size_t node = 0; node < nodes; ++node) {
        const double* col = g.values.data() + node * n_t;
        double acc = 0.0;
        for (int k = 0; k < n_t; ++k) acc += kern[k] * col[k];
        out.values[node] = acc;
    }
    return out;
}

SphereFunction moment_transform_P(const DetectorData& P, double lambda) {
    P.grid.validate();
    if (!(lambda > 0.0)) throw std::invalid_argument("moment_transform_P needs lambda > 0");
    const int n_t = P.grid.n_t;
    const double dt = P.grid.dt();
    const std::size_t nodes = P.grid.sphere.nodes();

    std::vector<double> kern(n_t);
    for (int k = 0; k < n_t; ++k) {
        double t = P.grid.time(k);
        kern[k] = time_weight(k, n_t, dt) * normalized_bessel_half(0, lambda * t) * t;
    }

    SphereFunction out(P.grid.sphere);
    for (std::size_t node = 0; node < nodes; ++node) {
        const double* col = P.values.data() + node * n_t;
        double acc = 0.0, cum = 0.0;
        for (int k = 1; k < n_t; ++k) {
            cum += 0.5 * dt * (col[k - 1] + col[k]);
            acc += kern[k] * cum;
        }
        out.values[node] = acc;
    }
    return out;
}

double RangeReport::max_moment_residual() const {
    double m = 0.0;
    for (const MomentEntry& e : moments) m = std::max(m, e.residual);
    return m;
}

double RangeReport::max_residual() const {
    return std::max({evenness_residual, zero_integral_residual, max_moment_residual()});
}

bool RangeReport::passes(double thr) const { return max_residual() <= thr; }

RangeReport range_report(const DetectorData& data, int l_max, int n_zeros) {
    if (l_max < 0 || n_zeros < 1)
        throw std::invalid_argument("range_report needs l_max >= 0 and n_zeros >= 1");
    data.grid.validate();
    const SphereGrid& sg = data.grid.sphere;
    const int n_t = data.grid.n_t;
    const double dt = data.grid.dt();
    const std::size_t nodes = sg.nodes();
    const bool detector_kind = data.kind == DataKind::detector;
    const bool hemi = sg.hemisphere();

    RangeReport rep;
    rep.kind = data.kind;
    rep.evenness_residual = check_even(data, &rep.evenness_pairs);
    rep.zero_integral_residual = detector_kind ? check_zero_integral(data) : 0.0;

    // Time columns entering the moment integral: the cumulative integral of P
    // against weight t for detector data, the data itself against t^2
    // otherwise.
    std::vector<double> cols;
    if (detector_kind) {
        cols.assign(nodes * n_t, 0.0);
        for (std::size_t node = 0; node < nodes; ++node) {
            const double* src = data.values.data() + node * n_t;
            double cum = 0.0;
            for (int k = 1; k < n_t; ++k) {
                cum += 0.5 * dt * (src[k - 1] + src[k]);
                cols[node * n_t + k] = cum;
            }
        }
    } else {
        cols = data.values;
    }
    std::vector<double> tw(n_t);
    for (int k = 0; k < n_t; ++k) {
        double t = data.grid.time(k);
        tw[k] = time_weight(k, n_t, dt) * (detector_kind ? t : t * t);
    }

    const std::vector<double> wts = node_weights(sg);
    std::vector<Vec3> dirs(nodes);
    for (int i = 0; i < sg.n_polar; ++i)
        for (int j = 0; j < sg.n_az; ++j) dirs[std::size_t(i) * sg.n_az + j] = sg.dir(i, j);

    std::vector<double> S(n_t), js(n_t);
    auto coefficient = [&](double lambda) {
        double acc = 0.0;
        for (int k = 1; k < n_t; ++k)
            acc += tw[k] * normalized_bessel_half(0, lambda * data.grid.time(k)) * S[k];
        return acc;
    };

    const int n_scan = 50;
    for (int l = 0; l <= l_max; ++l) {
        std::vector<double> zeros = bessel_j_half_zeros(l, n_zeros);
        // Hemisphere storage implies the even extension, under which odd-l
        // coefficients vanish identically; the pairing folds Y_l^m(-theta)
        // into a parity factor.
        double parity = hemi ? (l % 2 == 0 ? 2.0 : 0.0) : 1.0;
        double lam_top = zeros.back() / sg.r_det + kPi;
        for (int m = -l; m <= l; ++m) {
            std::fill(S.begin(), S.end(), 0.0);
            if (parity != 0.0) {
                for (std::size_t node = 0; node < nodes; ++node) {
                    double y = parity * wts[node] * real_sph_harm(l, m, dirs[node]);
                    const double* col = cols.data() + node * n_t;
                    for (int k = 1; k < n_t; ++k) S[k] += y * col[k];
                }
            }
            double scan_max = 0.0;
            for (int i = 1; i <= n_scan; ++i)
                scan_max = std::max(scan_max, std::abs(coefficient(lam_top * i / n_scan)));
            for (int z = 0; z < n_zeros; ++z) {
                MomentEntry e;
                e.l = l;
                e.m = m;
                e.zero_index = z + 1;
                e.lambda = zeros[z] / sg.r_det;
                double num = std::abs(coefficient(e.lambda));
                if (num == 0.0)
                    e.residual = 0.0;
                else if (scan_max == 0.0)
                    e.residual = std::numeric_limits<double>::infinity();
                else
                    e.residual = num / scan_max;
                rep.moments.push_back(e);
            }
        }
    }
    return rep;
}

std::string range_report_csv(const RangeReport& report) {
    std::ostringstream os;
    os.precision(17);
    os << "l,m,zero_index,lambda,residual\n";
    for (const MomentEntry& e : report.moments)
        os << e.l << ',' << e.m << ',' << e.zero_index << ',' << e.lambda << ',' << e.residual
           << '\n';
    return os.str();
}

std::string range_report_summary(const RangeReport& report) {
    std::ostringstream os;
    os.precision(6);
    os << "range check (" << (report.kind == DataKind::detector
                                  ? "detector data, zero-integral condition included"
                                  : "spherical-mean-type data")
       << ")\n";
    os << "evenness residual:      " << report.evenness_residual << " over "
       << report.evenness_pairs << " mirrored node pairs\n";
    os << "zero-integral residual: " << report.zero_integral_residual << "\n";
    os << "moment residual (max):  " << report.max_moment_residual() << " over "
       << report.moments.size() << " (l, m, zero) entries\n";
    if (report.threshold > 0.0)
        os << "verdict: " << (report.passes(report.threshold) ? "PASS" : "FAIL")
           << " at threshold " << report.threshold << "\n";
    return os.str();
}

} // namespace patc
