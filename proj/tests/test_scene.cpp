// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fluor/rng.hpp"
#include "fluor/scene.hpp"
#include "stat_utils.hpp"

using namespace fluor;

namespace {

const char* kScenesDir = FLUOR_SCENES_DIR;

std::string minimal_scene_json() {
    return R"({
        "fluorophore_db": ")" FLUOR_DATA_DIR R"(",
        "render": {"grid": {"min": 300, "max": 800, "step": 1}, "spp": 4, "seed": 1},
        "camera": {"position": [0,0,1], "look_at": [0,0,0], "fov": 40, "resolution": [8,8]},
        "media": [{
            "name": "solution",
            "sigma_s_bg": {"constant": 0.5},
            "fluorophores": [{"dye": "alexa_fluor_488", "concentration_g_per_l": 1e-4}]
        }],
        "shapes": [{
            "type": "sphere", "center": [0,0,0], "radius": 0.2,
            "material": {"type": "dielectric", "ior": 1.5},
            "interior": "solution"
        }],
        "lights": [{
            "shape": {"type": "quad", "corner": [-0.2, 0.5, -0.2],
                      "edge_u": [0.4, 0, 0], "edge_v": [0, 0, 0.4]},
            "spd": {"monochromatic": {"wavelength": 495, "power": 1}}
        }]
    })";
}

} // namespace

TEST_CASE("minimal scene parses into one medium") {
    auto text = minimal_scene_json();
    Scene scene = parse_scene(text, ".");
    CHECK(scene.media.size() == 1);
    CHECK(scene.primitives.size() == 1);
    CHECK(scene.lights.size() == 1);
    CHECK(scene.camera.width == 8);
}

TEST_CASE("bundled cornell scene has seven media and seven lights") {
    Scene scene = load_scene_file(std::filesystem::path(kScenesDir) / "cornell_spheres.json");
    CHECK(scene.media.size() == 7);
    CHECK(scene.lights.size() == 7);
    int beads = 0;
    for (const auto& p : scene.primitives) {
        if (p.interior_medium >= 0) ++beads;
    }
    CHECK(beads == 7);
}

TEST_CASE("unknown fluorophore name is rejected") {
    auto text = minimal_scene_json();
    auto pos = text.find("alexa_fluor_488");
    text.replace(pos, std::string("alexa_fluor_488").size(), "Alexa999");
    CHECK_THROWS_AS(parse_scene(text, "."), UnknownFluorophoreError);
}

TEST_CASE("json syntax errors carry line and column") {
    try {
        parse_scene("{\n  \"render\": [,]\n}", ".");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("scene:2") != std::string::npos);
    }
}

TEST_CASE("sphere intersection distance from outside") {
    Scene scene;
    scene.primitives.push_back(
        {Sphere{{0, 0, 0}, 0.5}, Lambertian{SpectralDistribution(scene.grid)}, -1, "s"});
    scene.finalize();
    Ray ray{{0, 0, 3}, {0, 0, -1}};
    auto hit = scene.intersect(ray);
    REQUIRE(hit.has_value());
    CHECK(hit->t == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(hit->entering);
    CHECK(hit->normal.z == doctest::Approx(1.0));
}

TEST_CASE("ray parallel to a quad misses") {
    Scene scene;
    scene.primitives.push_back({Quad{{-1, 0, -1}, {2, 0, 0}, {0, 0, 2}},
                                Lambertian{SpectralDistribution(scene.grid)}, -1, "q"});
    scene.finalize();
    Ray ray{{0, 0.5, 5}, {0, 0, -1}};
    CHECK_FALSE(scene.intersect(ray).has_value());
}

TEST_CASE("random rays agree with a brute-force scan") {
    Scene scene;
    Rng rng(6, 6);
    auto rnd = [&] { return 4.0 * (rng.next_double() - 0.5); };
    for (int i = 0; i < 12; ++i) {
        Vec3 c{rnd(), rnd(), rnd()};
        switch (i % 3) {
            case 0:
                scene.primitives.push_back({Sphere{c, 0.2 + 0.4 * rng.next_double()},
                                            Lambertian{SpectralDistribution(scene.grid)}, -1,
                                            "s"});
                break;
            case 1:
                scene.primitives.push_back(
                    {Quad{c, {1.5 * rng.next_double() + 0.1, 0, 0},
                          {0, 1.5 * rng.next_double() + 0.1, 0.3}},
                     Lambertian{SpectralDistribution(scene.grid)}, -1, "q"});
                break;
            default:
                scene.primitives.push_back(
                    {Box{c, c + Vec3{0.5 + rng.next_double(), 0.4, 0.8}},
                     Lambertian{SpectralDistribution(scene.grid)}, -1, "b"});
        }
    }
    scene.finalize();

    for (int i = 0; i < 10'000; ++i) {
        Ray ray{{rnd() * 2.0, rnd() * 2.0, rnd() * 2.0},
                normalize({rnd() + 1e-4, rnd(), rnd()})};
        auto fast = scene.intersect(ray);
        // brute force over the raw shapes
        double best = 1e300;
        bool found = false;
        for (const auto& p : scene.primitives) {
            if (auto h = intersect_shape(p.shape, ray, kShadowEpsilon, 1e300)) {
                if (h->t < best) {
                    best = h->t;
                    found = true;
                }
            }
        }
        CHECK(fast.has_value() == found);
        if (found && fast) CHECK(fast->t == doctest::Approx(best).epsilon(1e-12));
    }
}

TEST_CASE("visibility through empty space and past occluders") {
    Scene scene;
    scene.finalize();
    CHECK(scene.visible({0, 0, 0}, {0, 0, 1}));
    CHECK(scene.attenuated_visibility({0, 0, 0}, {0, 0, 1}, 500.0) == 1.0);

    Scene blocked;
    blocked.primitives.push_back({Quad{{-1, -1, 0.5}, {2, 0, 0}, {0, 2, 0}},
                                  Lambertian{SpectralDistribution(blocked.grid)}, -1, "wall"});
    blocked.finalize();
    CHECK_FALSE(blocked.visible({0, 0, 0}, {0, 0, 1}));
    CHECK(blocked.attenuated_visibility({0, 0, 0}, {0, 0, 1}, 500.0) == 0.0);
}

TEST_CASE("attenuated visibility through a homogeneous slab") {
    Scene scene;
    auto grid = scene.grid;
    scene.media.emplace_back(SpectralDistribution(grid),
                             SpectralDistribution::constant(grid, 1.0), 0.0,
                             std::vector<DissolvedFluorophore>{}, grid);
    scene.primitives.push_back({Box{{-1, -1, 0.2}, {1, 1, 0.7}}, SmoothDielectric{1.5, false},
                                0, "slab"});
    scene.finalize();

    double av = scene.attenuated_visibility({0, 0, 0}, {0, 0, 1}, 500.0);
    CHECK(av == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
    CHECK(scene.visible({0, 0, 0}, {0, 0, 1}));

    SUBCASE("symmetry") {
        Rng rng(9, 9);
        for (int i = 0; i < 200; ++i) {
            Vec3 a{rng.next_double() * 2 - 1, rng.next_double() * 2 - 1,
                   -0.5 * rng.next_double()};
            Vec3 b{rng.next_double() * 2 - 1, rng.next_double() * 2 - 1,
                   1.0 + rng.next_double()};
            double f = scene.attenuated_visibility(a, b, 500.0);
            double r = scene.attenuated_visibility(b, a, 500.0);
            CHECK(f == doctest::Approx(r).epsilon(1e-12));
        }
    }
}

TEST_CASE("closed shapes pair entering and exiting crossings") {
    Rng rng(12, 2);
    Shape shapes[] = {Shape{Sphere{{0, 0, 0}, 0.8}}, Shape{Box{{-0.5, -0.4, -0.6}, {0.5, 0.7, 0.3}}}};
    for (const auto& shape : shapes) {
        for (int i = 0; i < 2000; ++i) {
            Vec3 origin{4.0 * (rng.next_double() - 0.5), 4.0 * (rng.next_double() - 0.5), 3.0};
            Vec3 target{0.4 * (rng.next_double() - 0.5), 0.4 * (rng.next_double() - 0.5), 0.0};
            Ray ray{origin, normalize(target - origin)};
            int enters = 0, exits = 0;
            double t = 1e-9;
            for (;;) {
                auto h = intersect_shape(shape, ray, t, 1e300);
                if (!h) break;
                (h->entering ? enters : exits)++;
                t = h->t + 1e-9;
            }
            CHECK(enters == exits);
        }
    }
}

TEST_CASE("intersection order is declaration-stable under shuffles") {
    // two coincident spheres: the first declared one wins ties
    Scene scene;
    scene.primitives.push_back(
        {Sphere{{0, 0, 0}, 0.5}, Lambertian{SpectralDistribution(scene.grid)}, -1, "first"});
    scene.primitives.push_back(
        {Sphere{{0, 0, 0}, 0.5}, Lambertian{SpectralDistribution(scene.grid)}, -1, "second"});
    scene.finalize();
    auto hit = scene.intersect(Ray{{0, 0, 2}, {0, 0, -1}});
    REQUIRE(hit.has_value());
    CHECK(hit->primitive == 0);
}

TEST_CASE("interior media demand closed dielectric shapes") {
    auto text = minimal_scene_json();
    auto pos = text.find("\"type\": \"sphere\"");
    text.replace(pos, std::string("\"type\": \"sphere\"").size(), "\"type\": \"quad\"");
    // the quad parse will fail earlier on missing keys; build the check directly
    Scene scene;
    (void)text;
    CHECK_THROWS_AS(parse_scene(R"({
        "media": [{"name": "m", "sigma_s_bg": 1.0}],
        "shapes": [{"type": "quad", "corner": [0,0,0], "edge_u": [1,0,0],
                    "edge_v": [0,1,0],
                    "material": {"type": "dielectric"}, "interior": "m"}]
    })", "."), ValidationError);
    CHECK_THROWS_AS(parse_scene(R"({
        "media": [{"name": "m", "sigma_s_bg": 1.0}],
        "shapes": [{"type": "sphere", "center": [0,0,0], "radius": 1,
                    "material": {"type": "lambertian", "reflectance": 0.5},
                    "interior": "m"}]
    })", "."), ValidationError);
}

TEST_CASE("reflectance above one is rejected") {
    CHECK_THROWS_AS(parse_scene(R"({
        "shapes": [{"type": "sphere", "center": [0,0,0], "radius": 1,
                    "material": {"type": "lambertian", "reflectance": 1.4}}]
    })", "."), ValidationError);
}
