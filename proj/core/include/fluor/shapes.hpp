// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <variant>

#include "fluor/geometry.hpp"

namespace fluor {

struct Sphere {
    Vec3 center;
    double radius = 1.0;
};

/// Parallelogram patch: corner + s * edge_u + t * edge_v, s,t in [0,1].
struct Quad {
    Vec3 corner;
    Vec3 edge_u;
    Vec3 edge_v;
};

struct Box {
    Vec3 min;
    Vec3 max;
};

using Shape = std::variant<Sphere, Quad, Box>;

struct ShapeHit {
    double t = 0.0;
    Vec3 point;
    Vec3 normal;          // unit, oriented against the incoming ray
    bool entering = false; // crossing into the shape's interior
};

std::optional<ShapeHit> intersect_shape(const Shape& shape, const Ray& ray, double t_min,
                                        double t_max);

/// Closed-shape point containment; quads contain nothing.
bool shape_contains(const Shape& shape, const Vec3& p);

double shape_area(const Shape& shape);

struct SurfaceSample {
    Vec3 point;
    Vec3 normal;
};

/// Uniform area sampling (quads and spheres; used for emitters).
SurfaceSample sample_shape_surface(const Shape& shape, double u1, double u2);

} // namespace fluor
