// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>

#include "fluor/spectral.hpp"

namespace fluor {

struct Rgb {
    double r = 0.0, g = 0.0, b = 0.0;
};

struct Xyz {
    double x = 0.0, y = 0.0, z = 0.0;
};

/// CIE 1931 2-degree color matching functions, tabulated at 1 nm over
/// 360-830 nm. Zero outside that range.
double cie_x_bar(double lambda);
double cie_y_bar(double lambda);
double cie_z_bar(double lambda);

/// Tristimulus integration of an SPD over its grid (trapezoid).
Xyz spd_to_xyz(const SpectralDistribution& s);

/// XYZ integration, sRGB matrix, exposure scale, clamp to [0,1], gamma 2.2.
Rgb spd_to_rgb(const SpectralDistribution& s, double exposure);

Rgb xyz_to_srgb_linear(const Xyz& c);

} // namespace fluor
