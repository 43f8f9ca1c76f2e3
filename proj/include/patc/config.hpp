#pragma once

#include <cstdint>
#include <string>

#include "patc/forward.hpp"
#include "patc/grids.hpp"
#include "patc/recon.hpp"

namespace patc {

// Every numeric knob of the toolkit with the reference defaults: hemisphere
// of 50 x 200 detector directions, 50 times on [0, 2], 100-point circle
// rule, k = 2 stabilization weight, 360 x 401 sinograms, 256^2 charts on
// [-2.5, 2.5]^2, 80^3 volume. Values <= 0 for s_max and half_width mean
// "derive from the geometry" (cot(polar_min) and r_det).
struct RunConfig {
    double r_det = 1.0;
    int n_polar = 50;
    int n_az = 200;
    int n_t = 50;
    double t_max = 2.0;
    double polar_min = kPi / 25.0;
    int n_circle = 100;
    int k_weight = 2;
    double s_max = 0.0;
    int n_omega = 360;
    int n_s = 401;
    double x_max = 2.5;
    int n_plane = 256;
    int vol_n = 80;
    double half_width = 0.0;
    double noise_level = 0.0;
    std::uint64_t rng_seed = 0;
    int threads = 1;

    void validate() const;

    SphereTimeGrid make_grid() const;
    ForwardOptions forward_options() const;
    FunkInvertParams funk_params() const;
    PipelineParams pipeline_params() const;
    double resolved_half_width() const { return half_width > 0.0 ? half_width : r_det; }

    // One "key = value" assignment; unknown keys are rejected.
    void set(const std::string& key, const std::string& value);

    // key = value lines, '#' comments.
    void apply_file(const std::string& path);

    // Resolved key = value dump, one per line, round-trippable.
    std::string to_key_values() const;
};

} // namespace patc
