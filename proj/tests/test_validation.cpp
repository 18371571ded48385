// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "fluor/validation.hpp"

using namespace fluor;

namespace {
const char* kDataDir = FLUOR_DATA_DIR;
const char* kScenesDir = FLUOR_SCENES_DIR;
} // namespace

TEST_CASE("a spectrum matches itself and any scaled copy") {
    auto f = load_fluorophore(kDataDir, "alexa_fluor_488");
    auto same = compare_profiles(f.emission, f.emission);
    CHECK(same.normalized_rmse == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(same.peak_error_nm == 0.0);

    auto scaled = compare_profiles(f.emission, f.emission.scaled(2.0));
    CHECK(scaled.normalized_rmse == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(scaled.peak_error_nm == 0.0);
}

TEST_CASE("comparison is symmetric") {
    auto a = load_fluorophore(kDataDir, "alexa_fluor_488").emission;
    auto b = load_fluorophore(kDataDir, "alexa_fluor_568").emission;
    auto ab = compare_profiles(a, b);
    auto ba = compare_profiles(b, a);
    CHECK(ab.normalized_rmse == doctest::Approx(ba.normalized_rmse).epsilon(1e-12));
    CHECK(ab.peak_error_nm == ba.peak_error_nm);
}

TEST_CASE("a shifted copy reports the shift as peak error") {
    auto f = load_fluorophore(kDataDir, "alexa_fluor_488");
    const auto& g = f.emission.grid();
    std::vector<double> shifted(g.count(), 0.0);
    for (std::size_t i = 0; i + 5 < g.count(); ++i) {
        shifted[i + 5] = f.emission[i];
    }
    SpectralDistribution moved(g, std::move(shifted));
    auto cmp = compare_profiles(f.emission, moved);
    CHECK(std::abs(cmp.peak_error_nm - 5.0) <= g.step);
    CHECK(cmp.normalized_rmse > 0.0);
    CHECK_THROWS_AS(compare_profiles(f.emission, SpectralDistribution(g)), ZeroSpectrumError);
}

TEST_CASE("scaling test expected values are the normalized excitation") {
    Scene scene = load_scene_file(std::filesystem::path(kScenesDir) /
                                  "validation_bead_488.json");
    scene.camera.width = 16;
    scene.camera.height = 16;
    scene.finalize();
    auto dye = load_fluorophore(kDataDir, "alexa_fluor_488");

    RenderConfig config = RenderConfig::from_scene(scene);
    config.spp = 48;
    ValidationTolerances tol;
    tol.scaling = 1.0;       // structural test, not an accuracy gate
    tol.profile_rmse = 1.0;
    auto report = scaling_test(scene, dye, {450.0, 475.0}, config, tol);

    REQUIRE(report.scaling_points.size() == 3); // the peak run is appended
    for (const auto& p : report.scaling_points) {
        CHECK(p.expected == doctest::Approx(dye.excitation.value(p.lambda_x)).epsilon(1e-12));
        CHECK(p.expected >= 0.0);
        CHECK(p.expected <= 1.0);
    }

    SUBCASE("the max-excitation run measures exactly one") {
        for (const auto& p : report.scaling_points) {
            if (p.lambda_x == dye.excitation_peak()) {
                CHECK(p.measured == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("excitation outside the band produces darkness") {
    Scene scene = load_scene_file(std::filesystem::path(kScenesDir) /
                                  "validation_bead_488.json");
    scene.camera.width = 12;
    scene.camera.height = 12;
    scene.finalize();
    auto dye = load_fluorophore(kDataDir, "alexa_fluor_488");
    REQUIRE(dye.excitation.value(700.0) == 0.0);

    RenderConfig config = RenderConfig::from_scene(scene);
    config.spp = 32;
    ValidationTolerances tol;
    tol.profile_rmse = 1.0;
    auto report = scaling_test(scene, dye, {700.0}, config, tol);
    for (const auto& p : report.scaling_points) {
        if (p.lambda_x == 700.0) {
            CHECK(p.expected == 0.0);
            CHECK(p.measured == doctest::Approx(0.0).epsilon(1e-9));
        }
    }
}
