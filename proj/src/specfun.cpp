#include "patc/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "patc/grids.hpp"

namespace patc {

double legendre_p(int l, double x) {
    if (l < 0) throw std::invalid_argument("legendre_p: negative degree");
    if (x < -1.0 || x > 1.0) throw std::invalid_argument("legendre_p: |x| > 1");
    if (l == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int k = 2; k <= l; ++k) {
        double pk = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
        pm1 = p;
        p = pk;
    }
    return p;
}

double assoc_legendre(int l, int m, double x) {
    if (m < 0 || m > l) throw std::invalid_argument("assoc_legendre: need 0 <= m <= l");
    // P_m^m = (2m-1)!! (1-x^2)^{m/2}, then upward in degree.
    double somx2 = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double pmm = 1.0;
    for (int i = 1; i <= m; ++i) pmm *= (2 * i - 1) * somx2;
    if (l == m) return pmm;
    double pmmp1 = x * (2 * m + 1) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = (x * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

double real_sph_harm(int l, int m, const Vec3& dir) {
    int am = std::abs(m);
    if (am > l) throw std::invalid_argument("real_sph_harm: |m| > l");
    if (std::abs(norm(dir) - 1.0) > 1e-12)
        throw std::invalid_argument("real_sph_harm: direction must be a unit vector");
    double ct = dir.z;
    double norm = (2.0 * l + 1.0) / (4.0 * kPi);
    for (int k = l - am + 1; k <= l + am; ++k) norm /= k;
    norm = std::sqrt(norm);
    double plm = assoc_legendre(l, am, ct);
    if (m == 0) return norm * plm;
    double phi = std::atan2(dir.y, dir.x);
    double ang = m > 0 ? std::cos(am * phi) : std::sin(am * phi);
    return std::sqrt(2.0) * norm * plm * ang;
}

namespace {

// Upward recurrence is stable for t >= n; below that run Miller's backward
// recurrence and normalize against j_0 or j_1 (they never vanish together).
double sph_bessel_backward(int n, double t) {
    int start = n + int(std::sqrt(40.0 * n)) + 20;
    double jp1 = 0.0, j = 1e-30;
    double jn = 0.0, j0 = 0.0, j1 = 0.0;
    for (int k = start; k >= 0; --k) {
        double jm1 = (2.0 * k + 3.0) / t * j - jp1;
        jp1 = j;
        j = jm1;
        if (k == n) jn = j;
        if (k == 1) j1 = j;
        if (k == 0) j0 = j;
        // Rescale to avoid overflow during the downward sweep.
        if (std::abs(j) > 1e250) {
            j *= 1e-250;
            jp1 *= 1e-250;
            jn *= 1e-250;
            j1 *= 1e-250;
            j0 *= 1e-250;
        }
    }
    double ref0 = std::sin(t) / t;
    double ref1 = std::sin(t) / (t * t) - std::cos(t) / t;
    if (std::abs(j0) >= std::abs(j1)) return jn * (ref0 / j0);
    return jn * (ref1 / j1);
}

} // namespace

double sph_bessel(int n, double t) {
    if (n < 0) throw std::invalid_argument("sph_bessel: negative order");
    if (t < 0.0) throw std::invalid_argument("sph_bessel: negative argument");
    if (t == 0.0) return n == 0 ? 1.0 : 0.0;
    if (t < 1e-4) {
        // Series j_n(t) ~ t^n / (2n+1)!! (1 - t^2/(2(2n+3))).
        double dfac = 1.0;
        for (int k = 1; k <= n; ++k) dfac *= (2 * k + 1);
        return std::pow(t, n) / dfac * (1.0 - t * t / (2.0 * (2 * n + 3)));
    }
    double j0 = std::sin(t) / t;
    if (n == 0) return j0;
    double j1 = j0 / t - std::cos(t) / t;
    if (n == 1) return j1;
    if (t < double(n)) return sph_bessel_backward(n, t);
    double jm1 = j0, j = j1;
    for (int k = 2; k <= n; ++k) {
        double jk = (2.0 * k - 1.0) / t * j - jm1;
        jm1 = j;
        j = jk;
    }
    return j;
}

double bessel_j_half(int m, double t) {
    if (t <= 0.0) throw std::invalid_argument("bessel_j_half: need t > 0");
    return std::sqrt(2.0 * t / kPi) * sph_bessel(m, t);
}

double normalized_bessel_half(int m, double u) {
    double nu = m + 0.5;
    if (u < 0.0) u = -u;
    if (u < 1e-3) {
        double q = 0.25 * u * u;
        return 1.0 - q / (nu + 1.0) + q * q / (2.0 * (nu + 1.0) * (nu + 2.0));
    }
    // 2^nu Gamma(nu+1) J_nu(u) / u^nu = (2n+1)!! j_n(u) / u^n for nu = n+1/2.
    double dfac = 1.0;
    for (int k = 1; k <= m; ++k) dfac *= (2 * k + 1);
    return dfac * sph_bessel(m, u) / std::pow(u, m);
}

std::vector<double> bessel_j_half_zeros(int m, int count) {
    if (count < 0) throw std::invalid_argument("bessel_j_half_zeros: negative count");
    std::vector<double> zeros;
    zeros.reserve(count);
    auto f = [m](double t) { return sph_bessel(m, t); };
    // Zeros of J_{m+1/2} and of j_m coincide for t > 0. Consecutive zeros are
    // at least ~pi/2 apart here, so a modest scan step cannot skip any.
    double step = 0.05;
    double t = step;
    double fprev = f(t);
    while (int(zeros.size()) < count) {
        double tn = t + step;
        double fn = f(tn);
        if ((fprev < 0.0) != (fn < 0.0)) {
            double a = t, b = tn, fa = fprev;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (a + b);
                double fm = f(mid);
                if ((fa < 0.0) != (fm < 0.0)) b = mid;
                else { a = mid; fa = fm; }
            }
            double z = 0.5 * (a + b);
            // Newton polish using j_m' = j_{m-1} - (m+1)/t j_m.
            for (int it = 0; it < 4; ++it) {
                double jm = sph_bessel(m, z);
                double d = (m == 0 ? -sph_bessel(1, z) : sph_bessel(m - 1, z) - (m + 1) / z * sph_bessel(m, z));
                if (d == 0.0) break;
                z -= jm / d;
            }
            zeros.push_back(z);
        }
        t = tn;
        fprev = fn;
    }
    return zeros;
}

GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return r;
}

namespace {

double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth, double* achieved) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(f, a, m, fa, flm, fm);
    double right = simpson(f, m, b, fm, frm, fb);
    double err = left + right - whole;
    if (depth <= 0) {
        *achieved = std::max(*achieved, std::abs(err));
        return left + right + err / 15.0;
    }
    if (std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, achieved) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, achieved);
}

} // namespace

double funk_hecke_coeff(int m, const std::function<double(double)>& h, double tol) {
    if (m < 0) throw std::invalid_argument("funk_hecke_coeff: negative degree");
    auto integrand = [&](double t) { return h(t) * legendre_p(m, t); };
    double a = -1.0, b = 1.0;
    double fa = integrand(a), fb = integrand(b), fm = integrand(0.0);
    double whole = simpson(integrand, a, b, fa, fm, fb);
    double achieved = 0.0;
    double val = adaptive_simpson(integrand, a, b, fa, fm, fb, whole, tol, 48, &achieved);
    if (achieved > 15.0 * tol) {
        throw std::runtime_error("funk_hecke_coeff: quadrature stalled at error " +
                                 std::to_string(achieved));
    }
    return 2.0 * kPi * val;
}

} // namespace patc
