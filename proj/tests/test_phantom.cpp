#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "patc/forward.hpp"
#include "patc/phantom.hpp"
#include "test_helpers.hpp"

using namespace patc;
using namespace patc::testing;

TEST_SUITE("phantom") {

TEST_CASE("validation") {
    PhantomSpec empty;
    CHECK_NOTHROW(empty.validate(1.0));

    auto ok = single_ball(BallKind::sharp, {0.0, 0.0, 0.5}, 0.3, 0.3, 1.0);
    CHECK_NOTHROW(ok.validate(1.0));

    auto touching = single_ball(BallKind::sharp, {0.0, 0.0, 0.7}, 0.3, 0.3, 1.0);
    CHECK_THROWS_AS(touching.validate(1.0), std::invalid_argument);

    auto bad_inner = single_ball(BallKind::smooth, {0.0, 0.0, 0.0}, 0.3, 0.3, 1.0);
    CHECK_THROWS_AS(bad_inner.validate(1.0), std::invalid_argument);

    auto zero_amp = single_ball(BallKind::sharp, {0.0, 0.0, 0.0}, 0.3, 0.3, 0.0);
    CHECK_THROWS_AS(zero_amp.validate(1.0), std::invalid_argument);
}

TEST_CASE("json round trip") {
    auto spec = four_ball_spec(BallKind::smooth);
    auto back = PhantomSpec::from_json_text(spec.to_json_text());
    REQUIRE(back.components.size() == 4);
    CHECK(back.symmetrize == spec.symmetrize);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(back.components[i].kind == spec.components[i].kind);
        CHECK(back.components[i].center.y == spec.components[i].center.y);
        CHECK(back.components[i].outer_radius == spec.components[i].outer_radius);
        CHECK(back.components[i].inner_radius == spec.components[i].inner_radius);
        CHECK(back.components[i].amplitude == spec.components[i].amplitude);
    }
    CHECK_THROWS_AS(PhantomSpec::from_json_text("{ nope"), std::invalid_argument);
    CHECK_THROWS_AS(PhantomSpec::from_json_text(
                        R"({"components":[{"kind":"smooth","center":[0,0,0],"outer_radius":0.3,"amplitude":1}]})"),
                    std::invalid_argument);
}

TEST_CASE("eval_phantom pinned values") {
    auto fig2 = four_ball_spec(BallKind::sharp);
    CHECK(eval_phantom(fig2, {0.0, 0.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_phantom(fig2, {0.0, 0.55, 0.15}) == doctest::Approx(0.8).epsilon(1e-15));

    // Cubic blend at the profile midpoint gives half amplitude.
    auto sm = single_ball(BallKind::smooth, {0.0, 0.55, 0.5}, 0.15, 0.075, 1.1);
    Vec3 mid{0.1125, 0.55, 0.5};
    CHECK(eval_phantom(sm, mid) == doctest::Approx(0.55).epsilon(1e-14));

    for (double t : {0.0, 0.7, 1.4, 2.1, 2.8, 3.5, 4.2, 4.9, 5.6}) {
        Vec3 on = sphere_dir(t, 3.0 * t);
        CHECK(eval_phantom(fig2, on) == 0.0);
        CHECK(eval_phantom(fig2, 1.7 * on) == 0.0);
    }
}

TEST_CASE("sharp ball pressure") {
    auto b = single_ball(BallKind::sharp, {0.0, 0.0, 0.0}, 0.3, 0.3, 1.0).components[0];
    Vec3 x{0.0, 0.0, 0.5};
    CHECK(ball_pressure(b, x, 0.4) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(ball_pressure(b, x, 0.0) == 0.0);
    CHECK(ball_pressure(b, x, 1.0) == 0.0);
    CHECK(ball_pressure(b, x, 0.45) == doctest::Approx(0.05).epsilon(1e-13));
    CHECK(ball_pressure(b, x, 0.6) == doctest::Approx(-0.1).epsilon(1e-13));
    CHECK_THROWS(ball_pressure(b, Vec3{0.0, 0.0, 0.2}, 0.4));
}

TEST_CASE("smooth ball pressure") {
    auto b = single_ball(BallKind::smooth, {0.0, 0.0, 0.0}, 0.3, 0.15, 1.0).components[0];
    Vec3 x{0.0, 0.0, 0.5};
    CHECK(ball_pressure(b, x, 0.5) == 0.0);
    CHECK(ball_pressure(b, x, 0.35) == doctest::Approx(0.15).epsilon(1e-14));
    CHECK(ball_pressure(b, x, 0.9) == 0.0);
    CHECK(ball_pressure(b, x, 0.1) == 0.0);
    CHECK_THROWS(ball_pressure(b, Vec3{0.1, 0.0, 0.0}, 0.4));
}

TEST_CASE("smooth pressure is continuous in time") {
    auto fig3 = four_ball_spec(BallKind::smooth, false);
    Vec3 x{0.0, 0.0, 1.0};
    for (const auto& b : fig3.components) {
        double prev = ball_pressure(b, x, 0.0);
        double jump = 0.0;
        for (int k = 1; k <= 20000; ++k) {
            double cur = ball_pressure(b, x, 1e-4 * k);
            jump = std::max(jump, std::abs(cur - prev));
            prev = cur;
        }
        CHECK(jump < 1e-2 * b.amplitude);
    }
}

TEST_CASE("phantom pressure basics") {
    PhantomSpec empty;
    for (double t : {0.0, 0.3, 1.1, 1.9})
        CHECK(phantom_pressure(empty, sphere_dir(0.4, t), t) == 0.0);

    // Rotational symmetry of a centered ball.
    auto centered = single_ball(BallKind::sharp, {0.0, 0.0, 0.0}, 0.3, 0.3, 1.0);
    double ref = phantom_pressure(centered, Vec3{0.0, 0.0, 1.0}, 0.85);
    CHECK(ref == doctest::Approx(0.075).epsilon(1e-13));
    for (int k = 0; k < 8; ++k) {
        Vec3 a = sphere_dir(0.2 + 0.35 * k, 0.9 * k);
        CHECK(phantom_pressure(centered, a, 0.85) == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("four-ball boundary pressure against closed-form sum") {
    auto fig2 = four_ball_spec(BallKind::sharp);
    Vec3 north{0.0, 0.0, 1.0};

    // t = 0.5 hits the second ball's wavefront dead center: every term is 0.
    CHECK(phantom_pressure(fig2, north, 0.5) == 0.0);

    // Only ball 2 (center (0,0,0.5), R=0.3) is active at t = 0.4.
    CHECK(phantom_pressure(fig2, north, 0.4) == doctest::Approx(0.1).epsilon(1e-14));

    // At t = 0.75 balls 1, 2, 3 contribute; mirrors and ball 4 are silent.
    double t = 0.75;
    double d1 = std::sqrt(0.72);
    double d3 = std::sqrt(0.3025 + 0.25);
    double expected = 0.6 * (d1 - t) / (2.0 * d1) + 1.0 * (0.5 - t) / (2.0 * 0.5) +
                      1.1 * (d3 - t) / (2.0 * d3);
    CHECK(phantom_pressure(fig2, north, t) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("symmetrized pressure is even on the sphere") {
    auto fig2 = four_ball_spec(BallKind::sharp, true);
    for (int k = 0; k < 6; ++k) {
        Vec3 a = sphere_dir(0.3 + 0.2 * k, 1.1 * k + 0.4);
        for (double t : {0.35, 0.6, 0.85, 1.2, 1.6})
            CHECK(std::abs(phantom_pressure(fig2, a, t) - phantom_pressure(fig2, -a, t)) <= 1e-15);
    }
}

TEST_CASE("pressure matches time derivative of spherical means") {
    // Kirchhoff: p(x,t) = d/dt [ t Mean(f)(x,t) ] and R_S integrates over unit
    // directions, so Mean = R_S / 4pi and p = (1/4pi) d/dt [ t R_S f(x,t) ].
    auto sm = single_ball(BallKind::smooth, {0.0, 0.0, 0.5}, 0.3, 0.15, 1.0);
    Vec3 x{0.0, 0.0, 1.0};
    double h = 1e-4;
    for (double t : {0.45, 0.55, 0.6}) {
        double hi = (t + h) * spherical_radon_numeric(sm, x, t + h, 64);
        double lo = (t - h) * spherical_radon_numeric(sm, x, t - h, 64);
        double pred = (hi - lo) / (2.0 * h) / (4.0 * kPi);
        double exact = ball_pressure(sm.components[0], x, t);
        CHECK(pred == doctest::Approx(exact).epsilon(1e-2));
    }
}

TEST_CASE("detector signal support bounds") {
    auto one = single_ball(BallKind::sharp, {0.0, -0.6, 0.4}, 0.2, 0.2, 0.6);
    SphereTimeGrid grid;
    grid.sphere.n_polar = 6;
    grid.sphere.n_az = 8;
    grid.n_t = 80;
    auto data = detector_signal(one, grid);
    const Vec3 c = one.components[0].center;
    for (int i = 0; i < grid.sphere.n_polar; ++i) {
        for (int j = 0; j < grid.sphere.n_az; ++j) {
            auto frame = great_circle_frame(grid.sphere.dir(i, j));
            double dmin = 1e300, dmax = 0.0;
            for (int q = 0; q < 4096; ++q) {
                double d = norm(circle_point(frame, 2.0 * kPi * q / 4096) - c);
                dmin = std::min(dmin, d);
                dmax = std::max(dmax, d);
            }
            for (int k = 0; k < grid.n_t; ++k) {
                double t = grid.time(k);
                if (t <= dmin - 0.2 - 1e-9 || t >= dmax + 0.2 + 1e-9)
                    CHECK(data.at(i, j, k) == 0.0);
            }
        }
    }
}

TEST_CASE("rasterized volumes") {
    PhantomSpec empty;
    auto zero = rasterize_phantom(empty, 6, 1.0);
    for (double v : zero.values) CHECK(v == 0.0);

    // n=5 on [-1.25,1.25] puts voxel centers on the half-integer lattice.
    auto fig2 = four_ball_spec(BallKind::sharp);
    auto vol = rasterize_phantom(fig2, 5, 1.25);
    CHECK(vol.coord(2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(vol.coord(3) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(vol.at(2, 2, 3) == 1.0);

    auto volf = rasterize_phantom(fig2, 16, 1.25);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            for (int k = 0; k < 16; ++k)
                CHECK(std::abs(volf.at(i, j, k) - volf.at(15 - i, 15 - j, 15 - k)) <= 1e-14);
}

} // TEST_SUITE
