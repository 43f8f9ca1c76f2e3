#include "patc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace patc {

double volume_sample(const VolumeGrid& vol, const Vec3& x) {
    const double h = vol.voxel();
    auto prep = [&](double c, int& i0, double& fr) {
        double p = (c + vol.half_width) / h - 0.5;
        if (p < 0.0) p = 0.0;
        if (p > vol.n - 1.0) p = vol.n - 1.0;
        i0 = std::min(static_cast<int>(p), vol.n - 2 >= 0 ? vol.n - 2 : 0);
        fr = p - i0;
    };
    if (vol.n == 1) return vol.values[0];
    int i0, j0, k0;
    double fi, fj, fk;
    prep(x.x, i0, fi);
    prep(x.y, j0, fj);
    prep(x.z, k0, fk);
    double acc = 0.0;
    for (int di = 0; di < 2; ++di)
        for (int dj = 0; dj < 2; ++dj)
            for (int dk = 0; dk < 2; ++dk) {
                double w = (di ? fi : 1.0 - fi) * (dj ? fj : 1.0 - fj) * (dk ? fk : 1.0 - fk);
                acc += w * vol.at(i0 + di, j0 + dj, k0 + dk);
            }
    return acc;
}

VolumeMetrics volume_metrics(const VolumeGrid& vol, const PhantomSpec& spec, double r_det) {
    VolumeMetrics m;
    double num = 0.0, den = 0.0;
    const double r2 = r_det * r_det;
    for (int i = 0; i < vol.n; ++i)
        for (int j = 0; j < vol.n; ++j)
            for (int k = 0; k < vol.n; ++k) {
                Vec3 x{vol.coord(i), vol.coord(j), vol.coord(k)};
                if (x.z < 0.0 || norm2(x) >= r2) continue;
                double truth = eval_phantom(spec, x);
                double d = vol.at(i, j, k) - truth;
                num += d * d;
                den += truth * truth;
                m.max_abs_error = std::max(m.max_abs_error, std::abs(d));
            }
    if (den == 0.0)
        m.rel_l2_upper_half = num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    else
        m.rel_l2_upper_half = std::sqrt(num / den);

    for (const BallComponent& ball : spec.components) {
        BallMetrics bm;
        bm.center_value = volume_sample(vol, ball.center);
        double pr = ball.kind == BallKind::smooth ? ball.inner_radius : 0.5 * ball.outer_radius;
        double acc = 0.0;
        for (int i = 0; i < vol.n; ++i)
            for (int j = 0; j < vol.n; ++j)
                for (int k = 0; k < vol.n; ++k) {
                    Vec3 x{vol.coord(i), vol.coord(j), vol.coord(k)};
                    if (norm2(x - ball.center) > pr * pr) continue;
                    acc += vol.at(i, j, k);
                    ++bm.plateau_voxels;
                }
        bm.plateau_mean = bm.plateau_voxels ? acc / bm.plateau_voxels : bm.center_value;
        m.balls.push_back(bm);
    }
    return m;
}

std::string metrics_csv(const VolumeMetrics& m) {
    std::ostringstream os;
    os.precision(17);
    os << "name,index,value\n";
    os << "rel_l2_upper_half,," << m.rel_l2_upper_half << "\n";
    os << "max_abs_error,," << m.max_abs_error << "\n";
    for (std::size_t i = 0; i < m.balls.size(); ++i) {
        os << "center_value," << i << ',' << m.balls[i].center_value << "\n";
        os << "plateau_mean," << i << ',' << m.balls[i].plateau_mean << "\n";
        os << "plateau_voxels," << i << ',' << m.balls[i].plateau_voxels << "\n";
    }
    return os.str();
}

} // namespace patc
