#include "patc/phantom.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace patc {

void BallComponent::validate() const {
    if (!(outer_radius > 0.0)) throw std::invalid_argument("ball: outer_radius must be positive");
    if (kind == BallKind::smooth) {
        if (!(inner_radius > 0.0) || !(inner_radius < outer_radius))
            throw std::invalid_argument("ball: need 0 < inner_radius < outer_radius");
    }
    if (amplitude == 0.0) throw std::invalid_argument("ball: amplitude must be nonzero");
}

void PhantomSpec::validate(double r_det) const {
    // An empty component list is a valid zero phantom.
    for (const auto& b : components) {
        b.validate();
        if (norm(b.center) + b.outer_radius >= r_det) {
            std::ostringstream os;
            os << "phantom: ball at (" << b.center.x << ", " << b.center.y << ", "
               << b.center.z << ") with radius " << b.outer_radius
               << " is not strictly inside the detector sphere of radius " << r_det;
            throw std::invalid_argument(os.str());
        }
    }
}

static BallComponent ball_from_json(const nlohmann::json& j) {
    BallComponent b;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "sharp") b.kind = BallKind::sharp;
    else if (kind == "smooth") b.kind = BallKind::smooth;
    else throw std::invalid_argument("phantom: unknown component kind '" + kind + "'");
    auto c = j.at("center");
    if (!c.is_array() || c.size() != 3) throw std::invalid_argument("phantom: center must be [x, y, z]");
    b.center = {c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
    b.outer_radius = j.at("outer_radius").get<double>();
    if (j.contains("inner_radius")) b.inner_radius = j.at("inner_radius").get<double>();
    else if (b.kind == BallKind::smooth)
        throw std::invalid_argument("phantom: smooth component needs inner_radius");
    b.amplitude = j.at("amplitude").get<double>();
    return b;
}

PhantomSpec PhantomSpec::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("phantom: bad JSON: ") + e.what());
    }
    PhantomSpec spec;
    try {
        spec.symmetrize = j.value("symmetrize", true);
        for (const auto& c : j.at("components")) spec.components.push_back(ball_from_json(c));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("phantom: bad JSON: ") + e.what());
    }
    return spec;
}

PhantomSpec PhantomSpec::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open phantom file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string PhantomSpec::to_json_text() const {
    nlohmann::json j;
    j["symmetrize"] = symmetrize;
    j["components"] = nlohmann::json::array();
    for (const auto& b : components) {
        nlohmann::json c;
        c["kind"] = b.kind == BallKind::sharp ? "sharp" : "smooth";
        c["center"] = {b.center.x, b.center.y, b.center.z};
        c["outer_radius"] = b.outer_radius;
        if (b.kind == BallKind::smooth) c["inner_radius"] = b.inner_radius;
        c["amplitude"] = b.amplitude;
        j["components"].push_back(c);
    }
    return j.dump(2);
}

double smooth_profile(const BallComponent& ball, double s2) {
    double r = ball.inner_radius, R = ball.outer_radius;
    if (s2 <= r * r) return 1.0;
    if (s2 >= R * R) return 0.0;
    double xi = (std::sqrt(s2) - r) / (R - r);
    return 1.0 + xi * xi * (2.0 * xi - 3.0);
}

static double ball_value(const BallComponent& b, const Vec3& x) {
    double s2 = norm2(x - b.center);
    double R2 = b.outer_radius * b.outer_radius;
    if (s2 >= R2) return 0.0;
    if (b.kind == BallKind::sharp) return b.amplitude;
    return b.amplitude * smooth_profile(b, s2);
}

double eval_phantom(const PhantomSpec& spec, const Vec3& x) {
    double v = 0.0;
    for (const auto& b : spec.components) {
        v += ball_value(b, x);
        if (spec.symmetrize) v += ball_value(b, -x);
    }
    return v;
}

double ball_pressure(const BallComponent& ball, const Vec3& x, double t) {
    if (t < 0.0) throw std::invalid_argument("ball_pressure: negative time");
    double d = norm(x - ball.center);
    double R = ball.outer_radius;
    if (d <= R)
        throw std::domain_error("ball_pressure: evaluation point inside ball support");
    double u = d - t;
    if (ball.kind == BallKind::sharp) {
        if (std::abs(u) >= R) return 0.0;
        return ball.amplitude * u / (2.0 * d);
    }
    double prof = smooth_profile(ball, u * u);
    if (prof == 0.0) return 0.0;
    return ball.amplitude * u / (2.0 * d) * prof;
}

double phantom_pressure(const PhantomSpec& spec, const Vec3& x, double t) {
    double p = 0.0;
    for (const auto& b : spec.components) {
        p += ball_pressure(b, x, t);
        if (spec.symmetrize) {
            BallComponent m = b;
            m.center = -b.center;
            p += ball_pressure(m, x, t);
        }
    }
    return p;
}

VolumeGrid rasterize_phantom(const PhantomSpec& spec, int n, double half_width) {
    VolumeGrid vol(n, half_width);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                vol.at(i, j, k) = eval_phantom(spec, {vol.coord(i), vol.coord(j), vol.coord(k)});
    return vol;
}

} // namespace patc
