// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fluor/medium.hpp"
#include "fluor/shapes.hpp"
#include "fluor/spectral.hpp"

namespace fluor {

struct Lambertian {
    SpectralDistribution reflectance; // in [0, 1] per wavelength
};

struct GlossyPhong {
    SpectralDistribution reflectance;
    double exponent = 10.0;
};

/// Thin transparent boundary. Rays pass straight through unless `refract`
/// is set, in which case Snell refraction with Fresnel weighting applies.
struct SmoothDielectric {
    double ior = 1.5;
    bool refract = false;
};

using Material = std::variant<Lambertian, GlossyPhong, SmoothDielectric>;

struct Primitive {
    Shape shape;
    Material material;
    int interior_medium = -1; // index into Scene::media, closed shapes only
    std::string name;
};

struct Light {
    Shape shape; // quad or sphere area emitter
    SpectralDistribution spd; // radiance per nm
    bool two_sided = false;
    double area = 0.0;
};

struct Camera {
    Vec3 position{0.0, 0.0, 5.0};
    Vec3 look_at{0.0, 0.0, 0.0};
    Vec3 up{0.0, 1.0, 0.0};
    double vfov_deg = 40.0;
    int width = 128;
    int height = 128;

    /// Primary ray through pixel (x, y) with sub-pixel jitter (u1, u2).
    Ray generate_ray(int x, int y, double u1, double u2) const;
};

struct Hit {
    double t = 0.0;
    Vec3 point;
    Vec3 normal; // unit, oriented against the ray
    bool entering = false;
    int primitive = -1; // index into Scene::primitives, or
    int light = -1;     // index into Scene::lights
    const Material* material = nullptr;
};

/// Per-(light, dye) machinery for excitation sampling: the light SPD times
/// the dye excitation spectrum, with its integral.
struct ExcitationSampler {
    std::shared_ptr<const SpectralSampler> sampler; // null when the product is zero
    double integral = 0.0;
};

struct RenderDefaults {
    int spp = 64;
    int max_bounces = 32;
    std::uint64_t seed = 0;
    bool elastic = false;
};

class Scene {
public:
    Camera camera;
    std::vector<Primitive> primitives;
    std::vector<Light> lights;
    std::vector<Medium> media;
    WavelengthGrid grid = WavelengthGrid::standard();
    RenderDefaults defaults;

    /// Precompute light areas and excitation samplers. Must be called after
    /// the vectors above are filled (parse_scene does).
    void finalize();

    /// Nearest intersection against every primitive and light surface.
    /// Declaration order breaks exact ties (primitives first).
    std::optional<Hit> intersect(const Ray& ray, double t_min = kShadowEpsilon,
                                 double t_max = 1e300) const;

    /// Binary occlusion between two points; dielectric boundaries pass.
    bool visible(const Vec3& a, const Vec3& b) const;

    /// Occlusion combined with the transmittance of every medium segment
    /// crossed between a and b at the given wavelength.
    double attenuated_visibility(const Vec3& a, const Vec3& b, double lambda) const;

    /// Indices of media whose owning shapes contain the point.
    std::vector<int> media_at(const Vec3& p) const;

    /// Media containing the camera position (precomputed by finalize).
    const std::vector<int>& camera_media() const { return camera_media_; }

    const ExcitationSampler& excitation_sampler(int light, int medium, int dye) const;

private:
    // [light][medium][dye]
    std::vector<std::vector<std::vector<ExcitationSampler>>> excitation_;
    std::vector<int> camera_media_;
};

/// Parse the JSON scene description. `base_dir` anchors relative paths
/// (fluorophore database, CSV spectra). The FLUOR_DB environment variable,
/// when set, overrides the database path from the file.
Scene parse_scene(const std::string& text, const std::filesystem::path& base_dir);

Scene load_scene_file(const std::filesystem::path& path);

} // namespace fluor
