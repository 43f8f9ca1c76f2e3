#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "patc/config.hpp"
#include "patc/forward.hpp"
#include "patc/io.hpp"
#include "patc/metrics.hpp"
#include "patc/noise.hpp"
#include "patc/phantom.hpp"
#include "patc/range.hpp"
#include "patc/recon.hpp"

namespace {

using nlohmann::ordered_json;

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

ordered_json config_json(const patc::RunConfig& cfg) {
    ordered_json j;
    std::istringstream is(cfg.to_key_values());
    std::string line;
    while (std::getline(is, line)) {
        std::size_t eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 3);
        if (key == "rng_seed")
            j[key] = std::stoull(value);
        else if (value.find('.') == std::string::npos && value.find('e') == std::string::npos &&
                 value.find("inf") == std::string::npos)
            j[key] = std::stoll(value);
        else
            j[key] = std::stod(value);
    }
    return j;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Exit codes: 0 success, 1 usage, 2 I/O, 3 validation or range failure.
int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::invalid_argument& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}

struct CommonOpts {
    std::string config_path;
    int threads = 0; // 0: one per hardware thread
};

patc::RunConfig load_config(const CommonOpts& common) {
    patc::RunConfig cfg;
    if (!common.config_path.empty()) cfg.apply_file(common.config_path);
    cfg.threads = resolve_threads(common.threads);
    cfg.validate();
    return cfg;
}

void warn_near_boundary(const patc::PhantomSpec& spec, double r_det) {
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto& b = spec.components[i];
        if (patc::norm(b.center) + b.outer_radius > 0.98 * r_det)
            std::cerr << "warning: component " << i
                      << " reaches within 2% of the detector sphere; expect boundary artifacts\n";
    }
}

int cmd_simulate(const CommonOpts& common, const std::string& phantom_path,
                 const std::string& out_path, double noise, bool noise_set, std::uint64_t seed,
                 bool seed_set, bool csv) {
    patc::RunConfig cfg = load_config(common);
    if (noise_set) cfg.noise_level = noise;
    if (seed_set) cfg.rng_seed = seed;
    cfg.validate();

    patc::PhantomSpec spec = patc::PhantomSpec::from_json_file(phantom_path);
    spec.validate(cfg.r_det);
    warn_near_boundary(spec, cfg.r_det);

    patc::DetectorData P = patc::detector_signal(spec, cfg.make_grid(), cfg.forward_options());
    double ref_max = patc::add_uniform_noise(P, cfg.noise_level, cfg.rng_seed);
    patc::write_detector(out_path, P);
    if (csv) patc::write_text_file(out_path + ".csv", patc::detector_csv(P));

    ordered_json sidecar;
    sidecar["command"] = "simulate";
    sidecar["phantom"] = {{"path", phantom_path},
                          {"fnv1a64", hex64(patc::fnv1a64_file(phantom_path))}};
    sidecar["config"] = config_json(cfg);
    sidecar["noise"] = {
        {"level", cfg.noise_level},
        {"seed", cfg.rng_seed},
        {"reference_max_abs", ref_max},
        {"convention", "uniform on [-level*max|P|, +level*max|P|], mt19937_64, one draw per "
                       "sample in (polar, azimuth, time) storage order"}};
    sidecar["output"] = {{"path", out_path}, {"fnv1a64", hex64(patc::fnv1a64_file(out_path))}};
    patc::write_text_file(out_path + ".json", sidecar.dump(2) + "\n");
    std::cout << "wrote " << out_path << " (" << P.grid.sphere.n_polar << " x "
              << P.grid.sphere.n_az << " x " << P.grid.n_t << ")\n";
    return 0;
}

int cmd_add_noise(const std::string& in_path, const std::string& out_path, double level,
                  std::uint64_t seed) {
    patc::DetectorData data = patc::read_detector(in_path);
    double ref_max = patc::add_uniform_noise(data, level, seed);
    patc::write_detector(out_path, data);

    ordered_json sidecar;
    sidecar["command"] = "add-noise";
    sidecar["input"] = {{"path", in_path}, {"fnv1a64", hex64(patc::fnv1a64_file(in_path))}};
    sidecar["noise"] = {
        {"level", level},
        {"seed", seed},
        {"reference_max_abs", ref_max},
        {"convention", "uniform on [-level*max|P|, +level*max|P|], mt19937_64, one draw per "
                       "sample in (polar, azimuth, time) storage order"}};
    sidecar["output"] = {{"path", out_path}, {"fnv1a64", hex64(patc::fnv1a64_file(out_path))}};
    patc::write_text_file(out_path + ".json", sidecar.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_reconstruct(const CommonOpts& common, const std::string& in_path,
                    const std::string& out_path) {
    patc::RunConfig cfg = load_config(common);
    patc::DetectorData P = patc::read_detector(in_path);
    if (P.kind != patc::DataKind::detector)
        throw std::invalid_argument("reconstruct expects detector data (kind 0), got kind " +
                                    std::to_string(static_cast<int>(P.kind)));

    // The data file is authoritative for the measurement geometry; the config
    // only supplies processing parameters.
    cfg.r_det = P.grid.sphere.r_det;
    cfg.n_polar = P.grid.sphere.n_polar;
    cfg.n_az = P.grid.sphere.n_az;
    cfg.polar_min = P.grid.sphere.polar_min;
    cfg.n_t = P.grid.n_t;
    cfg.t_max = P.grid.t_max;
    cfg.validate();

    patc::PipelineResult res = patc::reconstruct_pipeline(P, cfg.pipeline_params());
    patc::write_volume(out_path, res.volume);

    const patc::VolumeGrid& vol = res.volume;
    const int mid = vol.n / 2;

    // x2-x3 slice at the small positive x1 nearest zero, +x3 up.
    std::vector<double> img(std::size_t(vol.n) * vol.n);
    double lo = 0.0, hi = 0.0;
    for (int k = 0; k < vol.n; ++k)
        for (int j = 0; j < vol.n; ++j) {
            double v = vol.at(mid, j, vol.n - 1 - k);
            img[std::size_t(k) * vol.n + j] = v;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    patc::write_pgm16(out_path + ".slice.pgm", vol.n, vol.n, img, lo, hi);

    std::ostringstream prof3;
    prof3.precision(17);
    prof3 << "x3,value\n";
    for (int k = 0; k < vol.n; ++k)
        prof3 << vol.coord(k) << ',' << vol.at(mid, mid, k) << '\n';
    patc::write_text_file(out_path + ".profile_x3.csv", prof3.str());

    int k05 = static_cast<int>(std::lround((0.5 + vol.half_width) / vol.voxel() - 0.5));
    k05 = std::min(std::max(k05, 0), vol.n - 1);
    std::ostringstream prof2;
    prof2.precision(17);
    prof2 << "x2,value\n";
    for (int j = 0; j < vol.n; ++j)
        prof2 << vol.coord(j) << ',' << vol.at(mid, j, k05) << '\n';
    patc::write_text_file(out_path + ".profile_x2.csv", prof2.str());

    ordered_json sidecar;
    sidecar["command"] = "reconstruct";
    sidecar["input"] = {{"path", in_path}, {"fnv1a64", hex64(patc::fnv1a64_file(in_path))}};
    sidecar["config"] = config_json(cfg);
    sidecar["diagnostics"] = {{"chart_dropped", res.diagnostics.chart_dropped},
                              {"t_out_of_range", res.diagnostics.t_out_of_range}};
    sidecar["outputs"] = {{"volume", out_path},
                          {"volume_fnv1a64", hex64(patc::fnv1a64_file(out_path))},
                          {"slice", out_path + ".slice.pgm"},
                          {"slice_plane", "x1 = " + std::to_string(vol.coord(mid))},
                          {"profile_x3", out_path + ".profile_x3.csv"},
                          {"profile_x2", out_path + ".profile_x2.csv"},
                          {"profile_x2_plane", "x3 = " + std::to_string(vol.coord(k05))}};
    patc::write_text_file(out_path + ".json", sidecar.dump(2) + "\n");
    std::cout << "wrote " << out_path << " (" << vol.n << "^3)\n";
    return 0;
}

int cmd_rangecheck(const std::string& in_path, int l_max, int n_zeros, double threshold,
                   const std::string& out_path) {
    patc::DetectorData data = patc::read_detector(in_path);
    patc::RangeReport rep = patc::range_report(data, l_max, n_zeros);
    rep.threshold = threshold;

    std::string summary = patc::range_report_summary(rep);
    std::cout << summary;
    if (!out_path.empty()) {
        patc::write_text_file(out_path + ".csv", patc::range_report_csv(rep));
        patc::write_text_file(out_path + ".txt", summary);
    }
    return rep.passes(threshold) ? 0 : 3;
}

int cmd_metrics(const CommonOpts& common, const std::string& vol_path,
                const std::string& phantom_path, const std::string& out_path) {
    patc::RunConfig cfg = load_config(common);
    patc::VolumeGrid vol = patc::read_volume(vol_path);
    patc::PhantomSpec spec = patc::PhantomSpec::from_json_file(phantom_path);
    spec.validate(cfg.r_det);
    if (vol.half_width + 1e-12 < cfg.r_det)
        throw std::invalid_argument("volume domain does not cover the reconstruction ball");

    patc::VolumeMetrics m = patc::volume_metrics(vol, spec, cfg.r_det);
    std::string csv = patc::metrics_csv(m);
    std::ostringstream extra;
    extra.precision(17);
    for (std::size_t i = 0; i < spec.components.size(); ++i)
        extra << "amplitude," << i << ',' << spec.components[i].amplitude << '\n';
    csv += extra.str();

    if (out_path.empty())
        std::cout << csv;
    else
        patc::write_text_file(out_path, csv);
    return 0;
}

int cmd_phantom_validate(const std::string& path, double r_det) {
    patc::PhantomSpec spec = patc::PhantomSpec::from_json_file(path);
    spec.validate(r_det);
    std::cout << "phantom OK: " << spec.components.size() << " component(s), symmetrize="
              << (spec.symmetrize ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
        const auto& b = spec.components[i];
        std::cout << "  [" << i << "] " << (b.kind == patc::BallKind::sharp ? "sharp" : "smooth")
                  << " center=(" << b.center.x << ", " << b.center.y << ", " << b.center.z
                  << ") R=" << b.outer_radius;
        if (b.kind == patc::BallKind::smooth) std::cout << " r=" << b.inner_radius;
        std::cout << " amplitude=" << b.amplitude << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"circular integrating detector simulation and reconstruction"};
    app.require_subcommand(1);

    CommonOpts common;

    auto* sim = app.add_subcommand("simulate", "synthesize detector data from a phantom");
    std::string sim_phantom, sim_out;
    double sim_noise = 0.0;
    std::uint64_t sim_seed = 0;
    bool sim_csv = false;
    sim->add_option("--phantom", sim_phantom, "phantom JSON file")->required();
    sim->add_option("--config", common.config_path, "key = value config file");
    sim->add_option("--out", sim_out, "output data file")->required();
    auto* sim_noise_opt = sim->add_option("--noise", sim_noise, "uniform noise level in [0, 1)");
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "noise RNG seed");
    sim->add_option("--threads", common.threads, "worker threads (0 = all hardware threads)");
    sim->add_flag("--csv", sim_csv, "also write a CSV dump next to the output");

    auto* noise_cmd = app.add_subcommand("add-noise", "add uniform noise to a data file");
    std::string an_in, an_out;
    double an_level = 0.0;
    std::uint64_t an_seed = 0;
    noise_cmd->add_option("data", an_in, "input data file")->required();
    noise_cmd->add_option("--noise", an_level, "noise level in [0, 1)")->required();
    noise_cmd->add_option("--seed", an_seed, "RNG seed");
    noise_cmd->add_option("--out", an_out, "output data file")->required();

    auto* rec = app.add_subcommand("reconstruct", "reconstruct initial pressure from data");
    std::string rec_in, rec_out;
    rec->add_option("data", rec_in, "input data file")->required();
    rec->add_option("--config", common.config_path, "key = value config file");
    rec->add_option("--out", rec_out, "output volume file")->required();
    rec->add_option("--threads", common.threads, "worker threads (0 = all hardware threads)");

    auto* rc = app.add_subcommand("rangecheck", "verify the range conditions on a data file");
    std::string rc_in, rc_out;
    int rc_lmax = 4, rc_nzeros = 5;
    double rc_threshold = 0.02;
    rc->add_option("data", rc_in, "input data file")->required();
    rc->add_option("--l-max", rc_lmax, "largest spherical-harmonic degree");
    rc->add_option("--n-zeros", rc_nzeros, "Bessel zeros per degree");
    rc->add_option("--threshold", rc_threshold, "pass/fail residual threshold");
    rc->add_option("--out", rc_out, "report basename (.csv and .txt are appended)");

    auto* met = app.add_subcommand("metrics", "compare a volume against a phantom");
    std::string met_vol, met_phantom, met_out;
    met->add_option("volume", met_vol, "volume file")->required();
    met->add_option("--phantom", met_phantom, "phantom JSON file")->required();
    met->add_option("--config", common.config_path, "key = value config file");
    met->add_option("--out", met_out, "output CSV (stdout when omitted)");

    auto* ph = app.add_subcommand("phantom", "phantom file helpers");
    ph->require_subcommand(1);
    auto* phv = ph->add_subcommand("validate", "check a phantom file");
    std::string phv_path;
    double phv_rdet = 1.0;
    phv->add_option("file", phv_path, "phantom JSON file")->required();
    phv->add_option("--r-det", phv_rdet, "detector sphere radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (sim->parsed())
        return run_guarded([&] {
            return cmd_simulate(common, sim_phantom, sim_out, sim_noise,
                                sim_noise_opt->count() > 0, sim_seed, sim_seed_opt->count() > 0,
                                sim_csv);
        });
    if (noise_cmd->parsed())
        return run_guarded([&] { return cmd_add_noise(an_in, an_out, an_level, an_seed); });
    if (rec->parsed())
        return run_guarded([&] { return cmd_reconstruct(common, rec_in, rec_out); });
    if (rc->parsed())
        return run_guarded([&] { return cmd_rangecheck(rc_in, rc_lmax, rc_nzeros, rc_threshold, rc_out); });
    if (met->parsed())
        return run_guarded([&] { return cmd_metrics(common, met_vol, met_phantom, met_out); });
    if (ph->parsed())
        return run_guarded([&] { return cmd_phantom_validate(phv_path, phv_rdet); });
    return 1;
}
