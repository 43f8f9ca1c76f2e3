#pragma once

#include <cmath>
#include <stdexcept>

namespace patc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline double norm2(const Vec3& v) { return dot(v, v); }

inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
    return v * (1.0 / n);
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

// Unit vector from spherical angles, polar measured from the +x3 axis.
inline Vec3 sphere_dir(double polar, double azimuth) {
    double sp = std::sin(polar);
    return {sp * std::cos(azimuth), sp * std::sin(azimuth), std::cos(polar)};
}

// Orthonormal frame {u, v} spanning the great circle orthogonal to theta:
//   u = (-theta2, theta1, 0) / |theta'|
//   v = (theta1 theta3, theta2 theta3, -|theta'|^2) / |theta'|
// where theta' = (theta1, theta2). At the poles any orthonormal pair works;
// we pick the coordinate axes.
struct CircleFrame {
    Vec3 u;
    Vec3 v;
};

inline CircleFrame great_circle_frame(const Vec3& theta) {
    double tp = std::hypot(theta.x, theta.y);
    if (tp < 1e-14) return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    return {{-theta.y / tp, theta.x / tp, 0.0},
            {theta.x * theta.z / tp, theta.y * theta.z / tp, -tp}};
}

// Point on the great circle orthogonal to theta at arc parameter psi.
inline Vec3 circle_point(const CircleFrame& f, double psi) {
    double c = std::cos(psi), s = std::sin(psi);
    return {c * f.u.x + s * f.v.x, c * f.u.y + s * f.v.y, c * f.u.z + s * f.v.z};
}

} // namespace patc
