#include "patc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace patc {

void RunConfig::validate() const {
    if (!(r_det > 0.0)) throw std::invalid_argument("r_det must be positive");
    if (n_polar < 2 || n_az < 2 || n_t < 2 || n_circle < 4 || n_omega < 2 || n_s < 3 ||
        n_plane < 2 || vol_n < 2)
        throw std::invalid_argument("all grid counts must be at least 2 (n_circle at least 4)");
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    if (!(polar_min > 0.0) || !(polar_min < 0.5 * kPi))
        throw std::invalid_argument("polar_min must lie in (0, pi/2)");
    if (k_weight < 0 || k_weight % 2 != 0)
        throw std::invalid_argument("k_weight must be even and nonnegative");
    if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
    if (noise_level < 0.0 || noise_level >= 1.0)
        throw std::invalid_argument("noise_level must be in [0, 1)");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

SphereTimeGrid RunConfig::make_grid() const {
    SphereTimeGrid g;
    g.sphere.n_polar = n_polar;
    g.sphere.n_az = n_az;
    g.sphere.polar_min = polar_min;
    g.sphere.polar_max = 0.5 * kPi;
    g.sphere.r_det = r_det;
    g.n_t = n_t;
    g.t_max = t_max;
    return g;
}

ForwardOptions RunConfig::forward_options() const {
    ForwardOptions o;
    o.n_circle = n_circle;
    o.threads = threads;
    return o;
}

FunkInvertParams RunConfig::funk_params() const {
    FunkInvertParams p;
    p.k = k_weight;
    p.n_omega = n_omega;
    p.n_s = n_s;
    p.s_max = s_max;
    p.n_plane = n_plane;
    p.x_max = x_max;
    return p;
}

PipelineParams RunConfig::pipeline_params() const {
    PipelineParams p;
    p.funk = funk_params();
    p.vol_n = vol_n;
    p.half_width = resolved_half_width();
    p.threads = threads;
    return p;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    auto as_double = [&](double& field) {
        std::size_t used = 0;
        field = std::stod(value, &used);
        while (used < value.size() && std::isspace(static_cast<unsigned char>(value[used]))) ++used;
        if (used != value.size()) throw std::invalid_argument("bad numeric value for " + key);
    };
    auto as_int = [&](int& field) {
        double d;
        as_double(d);
        field = static_cast<int>(d);
        if (field != d) throw std::invalid_argument(key + " must be an integer");
    };

    if (key == "r_det") as_double(r_det);
    else if (key == "n_polar") as_int(n_polar);
    else if (key == "n_az") as_int(n_az);
    else if (key == "n_t") as_int(n_t);
    else if (key == "t_max") as_double(t_max);
    else if (key == "polar_min") as_double(polar_min);
    else if (key == "n_circle") as_int(n_circle);
    else if (key == "k_weight") as_int(k_weight);
    else if (key == "s_max") as_double(s_max);
    else if (key == "n_omega") as_int(n_omega);
    else if (key == "n_s") as_int(n_s);
    else if (key == "x_max") as_double(x_max);
    else if (key == "n_plane") as_int(n_plane);
    else if (key == "vol_n") as_int(vol_n);
    else if (key == "half_width") as_double(half_width);
    else if (key == "noise_level") as_double(noise_level);
    else if (key == "rng_seed") rng_seed = std::stoull(value);
    else if (key == "threads") as_int(threads);
    else throw std::invalid_argument("unknown config key: " + key);
}

void RunConfig::apply_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open config file: " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        auto b = std::find_if(line.begin(), line.end(), notspace);
        auto e = std::find_if(line.rbegin(), line.rend(), notspace).base();
        if (b >= e) continue;
        std::string stripped(b, e);
        std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
        auto trim = [&](std::string s) {
            auto b2 = std::find_if(s.begin(), s.end(), notspace);
            auto e2 = std::find_if(s.rbegin(), s.rend(), notspace).base();
            return b2 < e2 ? std::string(b2, e2) : std::string();
        };
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
        try {
            set(key, value);
        } catch (const std::exception& ex) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + ex.what());
        }
    }
}

std::string RunConfig::to_key_values() const {
    std::ostringstream os;
    os.precision(17);
    os << "r_det = " << r_det << "\n";
    os << "n_polar = " << n_polar << "\n";
    os << "n_az = " << n_az << "\n";
    os << "n_t = " << n_t << "\n";
    os << "t_max = " << t_max << "\n";
    os << "polar_min = " << polar_min << "\n";
    os << "n_circle = " << n_circle << "\n";
    os << "k_weight = " << k_weight << "\n";
    os << "s_max = " << (s_max > 0.0 ? s_max : 1.0 / std::tan(polar_min)) << "\n";
    os << "n_omega = " << n_omega << "\n";
    os << "n_s = " << n_s << "\n";
    os << "x_max = " << x_max << "\n";
    os << "n_plane = " << n_plane << "\n";
    os << "vol_n = " << vol_n << "\n";
    os << "half_width = " << resolved_half_width() << "\n";
    os << "noise_level = " << noise_level << "\n";
    os << "rng_seed = " << rng_seed << "\n";
    os << "threads = " << threads << "\n";
    return os.str();
}

} // namespace patc
