// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/shapes.hpp"

#include <cmath>

#include "fluor/errors.hpp"

namespace fluor {
namespace {

std::optional<ShapeHit> hit_sphere(const Sphere& s, const Ray& ray, double t_min, double t_max) {
    Vec3 oc = ray.origin - s.center;
    double b = dot(oc, ray.dir);
    double c = dot(oc, oc) - s.radius * s.radius;
    double disc = b * b - c;
    if (disc < 0.0) return std::nullopt;
    double sq = std::sqrt(disc);
    double t = -b - sq;
    if (t < t_min) t = -b + sq;
    if (t < t_min || t > t_max) return std::nullopt;
    ShapeHit hit;
    hit.t = t;
    hit.point = ray.at(t);
    Vec3 outward = (hit.point - s.center) / s.radius;
    hit.entering = dot(ray.dir, outward) < 0.0;
    hit.normal = hit.entering ? outward : -outward;
    return hit;
}

std::optional<ShapeHit> hit_quad(const Quad& q, const Ray& ray, double t_min, double t_max) {
    Vec3 n = cross(q.edge_u, q.edge_v);
    double denom = dot(n, ray.dir);
    if (std::abs(denom) < 1e-14) return std::nullopt;
    double t = dot(n, q.corner - ray.origin) / denom;
    if (t < t_min || t > t_max) return std::nullopt;
    Vec3 rel = ray.at(t) - q.corner;
    double uu = dot(q.edge_u, q.edge_u);
    double uv = dot(q.edge_u, q.edge_v);
    double vv = dot(q.edge_v, q.edge_v);
    double ru = dot(rel, q.edge_u);
    double rv = dot(rel, q.edge_v);
    double det = uu * vv - uv * uv;
    double alpha = (vv * ru - uv * rv) / det;
    double beta = (uu * rv - uv * ru) / det;
    if (alpha < 0.0 || alpha > 1.0 || beta < 0.0 || beta > 1.0) return std::nullopt;
    ShapeHit hit;
    hit.t = t;
    hit.point = ray.at(t);
    Vec3 unit_n = normalize(n);
    hit.entering = denom < 0.0; // approached from the front face
    hit.normal = hit.entering ? unit_n : -unit_n;
    return hit;
}

std::optional<ShapeHit> hit_box(const Box& b, const Ray& ray, double t_min, double t_max) {
    double t0 = t_min, t1 = t_max;
    int axis0 = -1, axis1 = -1;
    const double o[3] = {ray.origin.x, ray.origin.y, ray.origin.z};
    const double d[3] = {ray.dir.x, ray.dir.y, ray.dir.z};
    const double lo[3] = {b.min.x, b.min.y, b.min.z};
    const double hi[3] = {b.max.x, b.max.y, b.max.z};
    for (int a = 0; a < 3; ++a) {
        double inv = 1.0 / d[a];
        double near = (lo[a] - o[a]) * inv;
        double far = (hi[a] - o[a]) * inv;
        if (near > far) std::swap(near, far);
        if (near > t0) {
            t0 = near;
            axis0 = a;
        }
        if (far < t1) {
            t1 = far;
            axis1 = a;
        }
        if (t0 > t1) return std::nullopt;
    }
    bool entering = axis0 >= 0 && t0 > t_min;
    double t = entering ? t0 : t1;
    int axis = entering ? axis0 : axis1;
    if (t < t_min || t > t_max || axis < 0) return std::nullopt;
    ShapeHit hit;
    hit.t = t;
    hit.point = ray.at(t);
    // outward normal of the struck face
    double sign = entering ? (d[axis] > 0.0 ? -1.0 : 1.0) : (d[axis] > 0.0 ? 1.0 : -1.0);
    Vec3 outward{0.0, 0.0, 0.0};
    if (axis == 0) outward.x = sign;
    if (axis == 1) outward.y = sign;
    if (axis == 2) outward.z = sign;
    hit.entering = entering;
    hit.normal = entering ? outward : -outward; // against the ray either way
    return hit;
}

} // namespace

std::optional<ShapeHit> intersect_shape(const Shape& shape, const Ray& ray, double t_min,
                                        double t_max) {
    if (const auto* s = std::get_if<Sphere>(&shape)) return hit_sphere(*s, ray, t_min, t_max);
    if (const auto* q = std::get_if<Quad>(&shape)) return hit_quad(*q, ray, t_min, t_max);
    return hit_box(std::get<Box>(shape), ray, t_min, t_max);
}

bool shape_contains(const Shape& shape, const Vec3& p) {
    return std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                return length_squared(p - s.center) < s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, Box>) {
                return p.x > s.min.x && p.x < s.max.x && p.y > s.min.y && p.y < s.max.y &&
                       p.z > s.min.z && p.z < s.max.z;
            } else {
                return false;
            }
        },
        shape);
}

double shape_area(const Shape& shape) {
    return std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                return 4.0 * kPi * s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, Quad>) {
                return length(cross(s.edge_u, s.edge_v));
            } else {
                Vec3 d = s.max - s.min;
                return 2.0 * (d.x * d.y + d.y * d.z + d.z * d.x);
            }
        },
        shape);
}

SurfaceSample sample_shape_surface(const Shape& shape, double u1, double u2) {
    if (const auto* q = std::get_if<Quad>(&shape)) {
        Vec3 p = q->corner + q->edge_u * u1 + q->edge_v * u2;
        return {p, normalize(cross(q->edge_u, q->edge_v))};
    }
    if (const auto* s = std::get_if<Sphere>(&shape)) {
        double z = 1.0 - 2.0 * u1;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = 2.0 * kPi * u2;
        Vec3 n{r * std::cos(phi), r * std::sin(phi), z};
        return {s->center + n * s->radius, n};
    }
    throw InvariantViolationError("box emitters are not supported");
}

} // namespace fluor
