#include "patc/recon.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "patc/parallel.hpp"

namespace patc {

DetectorData time_average(const DetectorData& P) {
    P.grid.validate();
    const int n_t = P.grid.n_t;
    const double dt = P.grid.dt();
    const std::size_t nodes = P.grid.sphere.nodes();

    double worst = 0.0;
    for (std::size_t node = 0; node < nodes; ++node)
        worst = std::max(worst, std::abs(P.values[node * n_t]));
    if (worst > 1e-12)
        throw std::invalid_argument("time_average needs data vanishing at t = 0, got max |P(., 0)| = " +
                                    std::to_string(worst));

    DetectorData g(P.grid, DataKind::time_averaged);
    for (std::size_t node = 0; node < nodes; ++node) {
        const double* src = P.values.data() + node * n_t;
        double* dst = g.values.data() + node * n_t;
        double cum = 0.0;
        dst[0] = 0.0;
        for (int k = 1; k < n_t; ++k) {
            cum += 0.5 * dt * (src[k - 1] + src[k]);
            dst[k] = cum / P.grid.time(k);
        }
    }
    return g;
}

std::vector<double> dt_t_filter(const std::vector<double>& u, double dt) {
    const int n = static_cast<int>(u.size());
    if (n < 3) throw std::invalid_argument("dt_t_filter needs at least three samples");
    if (!(dt > 0.0)) throw std::invalid_argument("dt_t_filter needs positive dt");

    std::vector<double> tu(n), out(n);
    for (int k = 0; k < n; ++k) tu[k] = (k * dt) * u[k];
    const double inv2dt = 1.0 / (2.0 * dt);
    out[0] = (-3.0 * tu[0] + 4.0 * tu[1] - tu[2]) * inv2dt;
    for (int k = 1; k < n - 1; ++k) out[k] = (tu[k + 1] - tu[k - 1]) * inv2dt;
    out[n - 1] = (3.0 * tu[n - 1] - 4.0 * tu[n - 2] + tu[n - 3]) * inv2dt;
    return out;
}

namespace {

// Shared backprojection core. `passes` is how many d_t(t .) filters to apply
// to each node's time column; the filtered column is divided by t (zero at
// t = 0) and integrated over the sphere with the trapezoid-in-polar,
// uniform-in-azimuth rule. On hemisphere grids each node also stands in for
// its antipode, read at t = |r_det alpha + x|.
VolumeGrid backproject_filtered(const DetectorData& data, int passes, double scale,
                                int vol_n, double half_width, int threads,
                                BackprojectStats* stats) {
    data.grid.validate();
    if (data.grid.n_t < 3) throw std::invalid_argument("backprojection needs at least three time samples");
    if (!(half_width > 0.0) || vol_n < 1) throw std::invalid_argument("bad volume shape");

    const SphereGrid& sg = data.grid.sphere;
    const int n_t = data.grid.n_t;
    const double dt = data.grid.dt();
    const std::size_t n_nodes = sg.nodes();

    std::vector<double> cols(n_nodes * n_t);
    parallel_for(n_nodes, threads, [&](std::size_t b, std::size_t e) {
        std::vector<double> u(n_t);
        for (std::size_t node = b; node < e; ++node) {
            const double* src = data.values.data() + node * n_t;
            u.assign(src, src + n_t);
            for (int pass = 0; pass < passes; ++pass) u = dt_t_filter(u, dt);
            double* dst = cols.data() + node * n_t;
            dst[0] = 0.0;
            for (int k = 1; k < n_t; ++k) dst[k] = u[k] / (k * dt);
        }
    });

    std::vector<Vec3> pos(n_nodes);
    std::vector<double> wts(n_nodes);
    for (int i = 0; i < sg.n_polar; ++i) {
        double w = std::sin(sg.polar(i)) * sg.dpolar() * sg.dazimuth();
        if (i == 0 || i == sg.n_polar - 1) w *= 0.5;
        for (int j = 0; j < sg.n_az; ++j) {
            pos[std::size_t(i) * sg.n_az + j] = sg.dir(i, j) * sg.r_det;
            wts[std::size_t(i) * sg.n_az + j] = w;
        }
    }

    VolumeGrid vol(vol_n, half_width);
    const bool mirror = sg.hemisphere();
    const double r2 = sg.r_det * sg.r_det;
    const double inv_dt = 1.0 / dt;
    const double t_top = static_cast<double>(n_t - 1);

    const std::size_t n_vox = vol.values.size();
    const std::size_t block = 512;
    const std::size_t n_blocks = (n_vox + block - 1) / block;
    std::vector<std::size_t> misses(n_blocks, 0);

    auto sample = [&](const double* c, double t, std::size_t& miss) {
        double p = t * inv_dt;
        if (p >= t_top) {
            if (p > t_top) { ++miss; return 0.0; }
            return c[n_t - 1];
        }
        int k = static_cast<int>(p);
        double fr = p - k;
        return c[k] + fr * (c[k + 1] - c[k]);
    };

    parallel_for(n_blocks, threads, [&](std::size_t bb, std::size_t be) {
        std::vector<double> acc(block);
        std::vector<Vec3> x(block);
        std::vector<char> inside(block);
        for (std::size_t blk = bb; blk < be; ++blk) {
            const std::size_t v0 = blk * block;
            const std::size_t v1 = std::min(v0 + block, n_vox);
            const std::size_t m = v1 - v0;
            for (std::size_t v = 0; v < m; ++v) {
                std::size_t g = v0 + v;
                int k = static_cast<int>(g % vol_n);
                int j = static_cast<int>((g / vol_n) % vol_n);
                int i = static_cast<int>(g / (std::size_t(vol_n) * vol_n));
                x[v] = {vol.coord(i), vol.coord(j), vol.coord(k)};
                inside[v] = norm2(x[v]) < r2 ? 1 : 0;
                acc[v] = 0.0;
            }
            std::size_t miss = 0;
            for (std::size_t node = 0; node < n_nodes; ++node) {
                const double* c = cols.data() + node * n_t;
                const Vec3 y = pos[node];
                const double w = wts[node];
                for (std::size_t v = 0; v < m; ++v) {
                    if (!inside[v]) continue;
                    double s = sample(c, norm(y - x[v]), miss);
                    if (mirror) s += sample(c, norm(y + x[v]), miss);
                    acc[v] += w * s;
                }
            }
            for (std::size_t v = 0; v < m; ++v)
                vol.values[v0 + v] = inside[v] ? scale * acc[v] : 0.0;
            misses[blk] = miss;
        }
    });

    if (stats) {
        stats->t_out_of_range = 0;
        for (std::size_t c : misses) stats->t_out_of_range += c;
    }
    return vol;
}

} // namespace

VolumeGrid fpr_backprojection(const DetectorData& q, int vol_n, double half_width,
                              int threads, BackprojectStats* stats) {
    const double scale = -q.grid.sphere.r_det / (8.0 * kPi * kPi);
    return backproject_filtered(q, 2, scale, vol_n, half_width, threads, stats);
}

VolumeGrid pressure_backprojection(const DetectorData& p, int vol_n, double half_width,
                                   int threads, BackprojectStats* stats) {
    const double scale = -p.grid.sphere.r_det / (2.0 * kPi);
    return backproject_filtered(p, 1, scale, vol_n, half_width, threads, stats);
}

PipelineResult reconstruct_pipeline(const DetectorData& P, const PipelineParams& params) {
    P.grid.validate();
    const SphereGrid& sg = P.grid.sphere;
    const int n_t = P.grid.n_t;
    const std::size_t n_nodes = sg.nodes();

    PipelineResult result;
    result.boundary_pressure = DetectorData(P.grid, DataKind::boundary_pressure);

    std::vector<std::size_t> dropped(n_t, 0);
    parallel_for(n_t, params.threads, [&](std::size_t b, std::size_t e) {
        SphereFunction slice(sg);
        for (std::size_t k = b; k < e; ++k) {
            for (std::size_t node = 0; node < n_nodes; ++node)
                slice.values[node] = P.values[node * n_t + k];
            FunkInvertStats st;
            SphereFunction inv = funk_invert_stabilized(slice, params.funk, &st);
            dropped[k] = st.dropped_contributions;
            for (std::size_t node = 0; node < n_nodes; ++node)
                result.boundary_pressure.values[node * n_t + k] = 2.0 * kPi * inv.values[node];
        }
    });

    BackprojectStats bs;
    result.volume = pressure_backprojection(result.boundary_pressure, params.vol_n,
                                            params.half_width, params.threads, &bs);
    for (std::size_t c : dropped) result.diagnostics.chart_dropped += c;
    result.diagnostics.t_out_of_range = bs.t_out_of_range;
    return result;
}

} // namespace patc
