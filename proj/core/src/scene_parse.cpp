// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fluor/builtin_spectra.hpp"
#include "fluor/errors.hpp"
#include "fluor/scene.hpp"

namespace fluor {
namespace {

using nlohmann::json;

[[noreturn]] void parse_error_at(const std::string& text, std::size_t byte,
                                 const std::string& what) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    throw ParseError("scene:" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
}

Vec3 get_vec3(const json& j, const char* key) {
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 3) {
        throw ValidationError(std::string(key) + " must be a 3-element array");
    }
    return {a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

SpectralDistribution interp_points(const std::vector<std::pair<double, double>>& pts,
                                   const WavelengthGrid& grid) {
    std::vector<double> v(grid.count(), 0.0);
    for (std::size_t i = 0; i < grid.count(); ++i) {
        double lambda = grid.wavelength(i);
        if (lambda < pts.front().first || lambda > pts.back().first) continue;
        auto hi = std::lower_bound(pts.begin(), pts.end(), lambda,
                                   [](const auto& p, double l) { return p.first < l; });
        if (hi == pts.begin()) {
            v[i] = hi->second;
        } else {
            auto lo = std::prev(hi);
            double f = (lambda - lo->first) / (hi->first - lo->first);
            v[i] = lo->second * (1.0 - f) + hi->second * f;
        }
    }
    return SpectralDistribution(grid, std::move(v));
}

SpectralDistribution parse_spd(const json& j, const WavelengthGrid& grid,
                               const std::filesystem::path& base, const char* what) {
    if (j.is_number()) {
        return SpectralDistribution::constant(grid, j.get<double>());
    }
    if (j.contains("constant")) {
        return SpectralDistribution::constant(grid, j.at("constant").get<double>());
    }
    if (j.contains("monochromatic")) {
        const auto& m = j.at("monochromatic");
        double lambda = m.at("wavelength").get<double>();
        double power = m.value("power", 1.0);
        if (!grid.contains(lambda)) {
            std::fprintf(stderr, "warning: %s: %.1f nm outside the render grid, clipping\n",
                         what, lambda);
        }
        return SpectralDistribution::impulse(grid, lambda, power);
    }
    if (j.contains("points")) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j.at("points")) {
            pts.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
        if (pts.empty() || !std::is_sorted(pts.begin(), pts.end())) {
            throw ValidationError(std::string(what) + ": points must be sorted by wavelength");
        }
        return interp_points(pts, grid);
    }
    if (j.contains("csv")) {
        auto path = base / j.at("csv").get<std::string>();
        return resample(read_spectrum_csv(path), grid);
    }
    if (j.contains("builtin")) {
        return builtin_spectrum(j.at("builtin").get<std::string>(), grid,
                                j.value("scale", 1.0));
    }
    throw ValidationError(std::string(what) + ": unrecognized spectral value");
}

Shape parse_shape(const json& j, const char* what) {
    auto type = j.at("type").get<std::string>();
    if (type == "sphere") {
        Sphere s{get_vec3(j, "center"), j.at("radius").get<double>()};
        if (!(s.radius > 0.0)) {
            throw ValidationError(std::string(what) + ": sphere radius must be positive");
        }
        return s;
    }
    if (type == "quad") {
        Quad q{get_vec3(j, "corner"), get_vec3(j, "edge_u"), get_vec3(j, "edge_v")};
        if (length_squared(cross(q.edge_u, q.edge_v)) <= 0.0) {
            throw ValidationError(std::string(what) + ": quad edges are linearly dependent");
        }
        return q;
    }
    if (type == "box") {
        Box b{get_vec3(j, "min"), get_vec3(j, "max")};
        if (!(b.min.x < b.max.x && b.min.y < b.max.y && b.min.z < b.max.z)) {
            throw ValidationError(std::string(what) + ": box min must be below max");
        }
        return b;
    }
    throw ValidationError(std::string(what) + ": unknown shape type `" + type + "`");
}

Material parse_material(const json& j, const WavelengthGrid& grid,
                        const std::filesystem::path& base, const std::string& what) {
    auto type = j.at("type").get<std::string>();
    if (type == "lambertian" || type == "glossy") {
        auto refl = parse_spd(j.at("reflectance"), grid, base, what.c_str());
        if (refl.max_value() > 1.0) {
            throw ValidationError(what + ": reflectance exceeds 1");
        }
        if (type == "lambertian") return Lambertian{std::move(refl)};
        double exponent = j.at("exponent").get<double>();
        if (!(exponent > 0.0)) {
            throw ValidationError(what + ": glossy exponent must be positive");
        }
        return GlossyPhong{std::move(refl), exponent};
    }
    if (type == "dielectric") {
        SmoothDielectric d{j.value("ior", 1.5), j.value("refract", false)};
        if (!(d.ior > 1.0)) {
            throw ValidationError(what + ": dielectric ior must exceed 1");
        }
        return d;
    }
    throw ValidationError(what + ": unknown material type `" + type + "`");
}

} // namespace

Scene parse_scene(const std::string& text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        parse_error_at(text, e.byte, e.what());
    }

    Scene scene;
    try {
        if (root.contains("render")) {
            const auto& r = root.at("render");
            if (r.contains("grid")) {
                const auto& g = r.at("grid");
                scene.grid = WavelengthGrid(g.at("min").get<double>(), g.at("max").get<double>(),
                                            g.value("step", 1.0));
            }
            scene.defaults.spp = r.value("spp", scene.defaults.spp);
            scene.defaults.max_bounces = r.value("max_bounces", scene.defaults.max_bounces);
            scene.defaults.seed = r.value("seed", scene.defaults.seed);
            scene.defaults.elastic = r.value("elastic", scene.defaults.elastic);
            if (scene.defaults.spp < 1 || scene.defaults.max_bounces < 1) {
                throw ValidationError("render: spp and max_bounces must be at least 1");
            }
        }

        std::filesystem::path db_path = base_dir / "data/fluorophores";
        if (root.contains("fluorophore_db")) {
            db_path = base_dir / root.at("fluorophore_db").get<std::string>();
        }
        if (const char* env = std::getenv("FLUOR_DB")) {
            db_path = env;
        }
        FluorophoreDatabase db(db_path);

        std::map<std::string, int> medium_index;
        for (const auto& jm : root.value("media", json::array())) {
            auto name = jm.at("name").get<std::string>();
            auto zero = SpectralDistribution(scene.grid);
            auto sigma_a = jm.contains("sigma_a_bg")
                               ? parse_spd(jm.at("sigma_a_bg"), scene.grid, base_dir, name.c_str())
                               : zero;
            auto sigma_s = jm.contains("sigma_s_bg")
                               ? parse_spd(jm.at("sigma_s_bg"), scene.grid, base_dir, name.c_str())
                               : zero;
            std::vector<DissolvedFluorophore> dyes;
            for (const auto& jd : jm.value("fluorophores", json::array())) {
                DissolvedFluorophore d;
                d.dye = db.get(jd.at("dye").get<std::string>());
                d.concentration = jd.at("concentration_g_per_l").get<double>();
                if (d.concentration < 0.0) {
                    throw ValidationError(name + ": negative concentration");
                }
                dyes.push_back(std::move(d));
            }
            medium_index[name] = static_cast<int>(scene.media.size());
            scene.media.emplace_back(sigma_a, sigma_s, jm.value("phase_g", 0.0), std::move(dyes),
                                     scene.grid);
        }

        int shape_no = 0;
        for (const auto& js : root.value("shapes", json::array())) {
            Primitive prim;
            prim.name = js.value("name", "shape[" + std::to_string(shape_no) + "]");
            prim.shape = parse_shape(js, prim.name.c_str());
            prim.material = parse_material(js.at("material"), scene.grid, base_dir, prim.name);
            if (js.contains("interior")) {
                auto medium_name = js.at("interior").get<std::string>();
                auto it = medium_index.find(medium_name);
                if (it == medium_index.end()) {
                    throw ValidationError(prim.name + ": unknown medium `" + medium_name + "`");
                }
                if (std::holds_alternative<Quad>(prim.shape)) {
                    throw ValidationError(prim.name + ": open quads cannot hold a medium");
                }
                if (!std::holds_alternative<SmoothDielectric>(prim.material)) {
                    throw ValidationError(prim.name +
                                          ": interior media require a dielectric boundary");
                }
                prim.interior_medium = it->second;
            }
            scene.primitives.push_back(std::move(prim));
            ++shape_no;
        }

        int light_no = 0;
        for (const auto& jl : root.value("lights", json::array())) {
            Light light;
            std::string name = "light[" + std::to_string(light_no) + "]";
            light.shape = parse_shape(jl.at("shape"), name.c_str());
            if (std::holds_alternative<Box>(light.shape)) {
                throw ValidationError(name + ": box emitters are not supported");
            }
            light.spd = parse_spd(jl.at("spd"), scene.grid, base_dir, name.c_str());
            light.two_sided = jl.value("two_sided", false);
            scene.lights.push_back(std::move(light));
            ++light_no;
        }

        if (root.contains("camera")) {
            const auto& jc = root.at("camera");
            scene.camera.position = get_vec3(jc, "position");
            scene.camera.look_at = get_vec3(jc, "look_at");
            scene.camera.up = jc.contains("up") ? get_vec3(jc, "up") : Vec3{0.0, 1.0, 0.0};
            scene.camera.vfov_deg = jc.value("fov", 40.0);
            if (jc.contains("resolution")) {
                scene.camera.width = jc.at("resolution")[0].get<int>();
                scene.camera.height = jc.at("resolution")[1].get<int>();
            }
            if (!(scene.camera.vfov_deg > 0.0 && scene.camera.vfov_deg < 180.0)) {
                throw ValidationError("camera: fov must lie in (0, 180)");
            }
            if (scene.camera.width < 1 || scene.camera.height < 1) {
                throw ValidationError("camera: resolution must be at least 1x1");
            }
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("scene: ") + e.what());
    }

    scene.finalize();
    return scene;
}

Scene load_scene_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open scene file " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scene(ss.str(), path.parent_path());
}

} // namespace fluor
