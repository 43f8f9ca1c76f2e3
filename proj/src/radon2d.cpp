#include "patc/radon2d.hpp"

#include <cmath>
#include <stdexcept>

namespace patc {

namespace {

double plane_interp(const PlaneGrid& p, double x, double y) {
    double u = (x + p.x_max) / p.dx();
    double v = (y + p.x_max) / p.dx();
    int i0 = int(std::floor(u));
    int j0 = int(std::floor(v));
    if (i0 < 0 || j0 < 0 || i0 > p.n - 2 || j0 > p.n - 2) {
        // Allow exact top edges.
        if (u >= 0.0 && v >= 0.0 && u <= p.n - 1 && v <= p.n - 1) {
            i0 = std::min(i0, p.n - 2);
            j0 = std::min(j0, p.n - 2);
        } else {
            return 0.0;
        }
    }
    double fu = u - i0, fv = v - j0;
    double a = p.at(i0, j0) * (1.0 - fv) + p.at(i0, j0 + 1) * fv;
    double b = p.at(i0 + 1, j0) * (1.0 - fv) + p.at(i0 + 1, j0 + 1) * fv;
    return a * (1.0 - fu) + b * fu;
}

} // namespace

double radon2d_forward(const PlaneGrid& plane, const Vec2& omega, double s) {
    double nu_max = plane.x_max * std::sqrt(2.0) + plane.dx();
    int steps = int(std::ceil(2.0 * nu_max / plane.dx()));
    double h = 2.0 * nu_max / steps;
    double px = -omega.y, py = omega.x;
    double sum = 0.0;
    for (int k = 0; k <= steps; ++k) {
        double nu = -nu_max + k * h;
        double w = (k == 0 || k == steps) ? 0.5 : 1.0;
        sum += w * plane_interp(plane, s * omega.x + nu * px, s * omega.y + nu * py);
    }
    return sum * h;
}

Sinogram2D radon2d_forward_all(const PlaneGrid& plane, int n_omega, int n_s, double s_max) {
    Sinogram2D sino(n_omega, n_s, s_max);
    for (int i = 0; i < n_omega; ++i) {
        double a = sino.angle(i);
        Vec2 omega{std::cos(a), std::sin(a)};
        for (int j = 0; j < n_s; ++j)
            sino.at(i, j) = radon2d_forward(plane, omega, sino.offset(j));
    }
    return sino;
}

Sinogram2D d_ds(const Sinogram2D& sino) {
    if (sino.n_s < 3) throw std::invalid_argument("d_ds: need at least 3 offsets");
    Sinogram2D out(sino.n_omega, sino.n_s, sino.s_max);
    double ds = sino.ds();
    for (int i = 0; i < sino.n_omega; ++i) {
        const double* row = &sino.values[std::size_t(i) * sino.n_s];
        double* o = &out.values[std::size_t(i) * sino.n_s];
        int n = sino.n_s;
        o[0] = (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * ds);
        for (int j = 1; j < n - 1; ++j) o[j] = (row[j + 1] - row[j - 1]) / (2.0 * ds);
        o[n - 1] = (3.0 * row[n - 1] - 4.0 * row[n - 2] + row[n - 3]) / (2.0 * ds);
    }
    return out;
}

std::vector<double> hilbert(const std::vector<double>& u, double /*ds*/) {
    // The cell-integrated kernel is scale-free: integrating 1/(s_i - s') over
    // cell j gives ln|(k+1/2)/(k-1/2)| with k = i - j for any spacing.
    int n = int(u.size());
    std::vector<double> w(2 * n - 1);
    for (int k = -(n - 1); k <= n - 1; ++k)
        w[k + n - 1] = k == 0 ? 0.0 : std::log(std::abs((k + 0.5) / (k - 0.5)));
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += u[j] * w[i - j + n - 1];
        out[i] = s / kPi;
    }
    return out;
}

Sinogram2D hilbert_rows(const Sinogram2D& sino) {
    Sinogram2D out(sino.n_omega, sino.n_s, sino.s_max);
    int n = sino.n_s;
    std::vector<double> w(2 * n - 1);
    for (int k = -(n - 1); k <= n - 1; ++k)
        w[k + n - 1] = k == 0 ? 0.0 : std::log(std::abs((k + 0.5) / (k - 0.5)));
    for (int i = 0; i < sino.n_omega; ++i) {
        const double* row = &sino.values[std::size_t(i) * n];
        double* o = &out.values[std::size_t(i) * n];
        for (int a = 0; a < n; ++a) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += row[j] * w[a - j + n - 1];
            o[a] = s / kPi;
        }
    }
    return out;
}

PlaneGrid backprojection(const Sinogram2D& sino, int n, double x_max,
                         std::size_t* out_of_range) {
    PlaneGrid out(n, x_max);
    double ds = sino.ds();
    std::size_t misses = 0;
    std::vector<double> cs(sino.n_omega), sn(sino.n_omega);
    for (int i = 0; i < sino.n_omega; ++i) {
        cs[i] = std::cos(sino.angle(i));
        sn[i] = std::sin(sino.angle(i));
    }
    for (int ix = 0; ix < n; ++ix) {
        double x = out.coord(ix);
        for (int iy = 0; iy < n; ++iy) {
            double y = out.coord(iy);
            double acc = 0.0;
            for (int i = 0; i < sino.n_omega; ++i) {
                double s = x * cs[i] + y * sn[i];
                double u = (s + sino.s_max) / ds;
                int j0 = int(std::floor(u));
                if (j0 < 0 || j0 > sino.n_s - 2) {
                    if (u >= 0.0 && u <= sino.n_s - 1) {
                        j0 = sino.n_s - 2;
                    } else {
                        ++misses;
                        continue;
                    }
                }
                double f = u - j0;
                acc += sino.at(i, j0) * (1.0 - f) + sino.at(i, j0 + 1) * f;
            }
            out.at(ix, iy) = acc * 2.0 * kPi / sino.n_omega;
        }
    }
    if (out_of_range) *out_of_range = misses;
    return out;
}

PlaneGrid fbp_invert(const Sinogram2D& sino, int n, double x_max) {
    PlaneGrid out = backprojection(hilbert_rows(d_ds(sino)), n, x_max);
    for (auto& v : out.values) v /= 4.0 * kPi;
    return out;
}

} // namespace patc
