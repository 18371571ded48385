// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "fluor/color.hpp"

using namespace fluor;

TEST_CASE("zero SPD maps to black") {
    Rgb c = spd_to_rgb(SpectralDistribution(WavelengthGrid::standard()), 1.0);
    CHECK(c.r == 0.0);
    CHECK(c.g == 0.0);
    CHECK(c.b == 0.0);
}

TEST_CASE("equal-energy SPD is near white at unit luminance") {
    auto s = SpectralDistribution::constant(WavelengthGrid::standard(), 1.0);
    Xyz xyz = spd_to_xyz(s);
    REQUIRE(xyz.y > 0.0);
    Rgb c = spd_to_rgb(s, 1.0 / xyz.y);
    CHECK(std::abs(c.r - c.g) < 0.05);
    CHECK(std::abs(c.g - c.b) < 0.05);
    CHECK(std::abs(c.r - c.b) < 0.05);
    CHECK(c.g > 0.9);
}

TEST_CASE("monochromatic 550 nm is green-dominant") {
    auto s = SpectralDistribution::impulse(WavelengthGrid::standard(), 550.0, 1.0);
    Xyz xyz = spd_to_xyz(s);
    Rgb lin = xyz_to_srgb_linear(xyz);
    CHECK(lin.g > lin.r);
    CHECK(lin.g > lin.b);
    Rgb c = spd_to_rgb(s, 1.0 / xyz.y);
    CHECK(c.g > c.r);
    CHECK(c.g > c.b);
}

TEST_CASE("color matching functions vanish outside the table") {
    CHECK(cie_x_bar(200.0) == 0.0);
    CHECK(cie_y_bar(900.0) == 0.0);
    CHECK(cie_y_bar(555.0) > 0.9);
}
