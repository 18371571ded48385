// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace fluor {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x; y += o.y; z += o.z;
        return *this;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double length_squared(const Vec3& v) { return dot(v, v); }
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalize(const Vec3& v) {
    double len = length(v);
    return len > 0.0 ? v / len : Vec3{0.0, 0.0, 0.0};
}

struct Ray {
    Vec3 origin;
    Vec3 dir; // unit length
    Vec3 at(double t) const { return origin + dir * t; }
};

/// Orthonormal basis around a unit vector n (Duff et al. branchless form).
struct Frame {
    Vec3 t, b, n;

    explicit Frame(const Vec3& n_) : n(n_) {
        double sign = std::copysign(1.0, n.z);
        double a = -1.0 / (sign + n.z);
        double bb = n.x * n.y * a;
        t = {1.0 + sign * n.x * n.x * a, sign * bb, -sign * n.x};
        b = {bb, sign + n.y * n.y * a, -n.y};
    }

    Vec3 to_world(const Vec3& local) const { return t * local.x + b * local.y + n * local.z; }
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInv4Pi = 1.0 / (4.0 * kPi);

/// Offset applied when re-spawning rays from surfaces to dodge self-hits.
inline constexpr double kRayEpsilon = 1e-9;
inline constexpr double kShadowEpsilon = 1e-7;

} // namespace fluor
