// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/color.hpp"

#include <algorithm>
#include <cmath>

namespace fluor {
namespace {

constexpr int kCieMin = 360;
constexpr int kCieMax = 830;
constexpr int kCieCount = kCieMax - kCieMin + 1;

// Multi-lobe Gaussian fit of the CIE 1931 2-degree observer (Wyman et al. 2013).
double fit_x(double nm) {
    double t1 = (nm - 442.0) * (nm < 442.0 ? 0.0624 : 0.0374);
    double t2 = (nm - 599.8) * (nm < 599.8 ? 0.0264 : 0.0323);
    double t3 = (nm - 501.1) * (nm < 501.1 ? 0.0490 : 0.0382);
    return 0.362 * std::exp(-0.5 * t1 * t1) + 1.056 * std::exp(-0.5 * t2 * t2) -
           0.065 * std::exp(-0.5 * t3 * t3);
}

double fit_y(double nm) {
    double t1 = (nm - 568.8) * (nm < 568.8 ? 0.0213 : 0.0247);
    double t2 = (nm - 530.9) * (nm < 530.9 ? 0.0613 : 0.0322);
    return 0.821 * std::exp(-0.5 * t1 * t1) + 0.286 * std::exp(-0.5 * t2 * t2);
}

double fit_z(double nm) {
    double t1 = (nm - 437.0) * (nm < 437.0 ? 0.0845 : 0.0278);
    double t2 = (nm - 459.0) * (nm < 459.0 ? 0.0385 : 0.0725);
    return 1.217 * std::exp(-0.5 * t1 * t1) + 0.681 * std::exp(-0.5 * t2 * t2);
}

struct CieTables {
    std::array<double, kCieCount> x{}, y{}, z{};

    CieTables() {
        double sx = 0.0, sy = 0.0, sz = 0.0;
        for (int i = 0; i < kCieCount; ++i) {
            double nm = static_cast<double>(kCieMin + i);
            x[i] = std::max(0.0, fit_x(nm));
            y[i] = std::max(0.0, fit_y(nm));
            z[i] = std::max(0.0, fit_z(nm));
            sx += x[i];
            sy += y[i];
            sz += z[i];
        }
        // Equal-energy normalization: all three channels integrate to the
        // canonical 106.857 nm so illuminant E maps to X == Y == Z.
        constexpr double kIntegral = 106.857;
        for (int i = 0; i < kCieCount; ++i) {
            x[i] *= kIntegral / sx;
            y[i] *= kIntegral / sy;
            z[i] *= kIntegral / sz;
        }
    }
};

const CieTables& tables() {
    static const CieTables t;
    return t;
}

double lookup(const std::array<double, kCieCount>& tab, double lambda) {
    if (lambda < kCieMin || lambda > kCieMax) return 0.0;
    double pos = lambda - kCieMin;
    auto i = static_cast<std::size_t>(pos);
    if (i >= kCieCount - 1) return tab[kCieCount - 1];
    double f = pos - static_cast<double>(i);
    return tab[i] * (1.0 - f) + tab[i + 1] * f;
}

double gamma_encode(double v) { return std::pow(std::clamp(v, 0.0, 1.0), 1.0 / 2.2); }

} // namespace

double cie_x_bar(double lambda) { return lookup(tables().x, lambda); }
double cie_y_bar(double lambda) { return lookup(tables().y, lambda); }
double cie_z_bar(double lambda) { return lookup(tables().z, lambda); }

Xyz spd_to_xyz(const SpectralDistribution& s) {
    const auto& g = s.grid();
    Xyz out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        double nm = g.wavelength(i);
        double w = (i == 0 || i + 1 == s.size()) ? 0.5 : 1.0;
        double v = s[i] * w * g.step;
        out.x += v * cie_x_bar(nm);
        out.y += v * cie_y_bar(nm);
        out.z += v * cie_z_bar(nm);
    }
    return out;
}

Rgb xyz_to_srgb_linear(const Xyz& c) {
    return {3.2404542 * c.x - 1.5371385 * c.y - 0.4985314 * c.z,
            -0.9692660 * c.x + 1.8760108 * c.y + 0.0415560 * c.z,
            0.0556434 * c.x - 0.2040259 * c.y + 1.0572252 * c.z};
}

Rgb spd_to_rgb(const SpectralDistribution& s, double exposure) {
    Rgb lin = xyz_to_srgb_linear(spd_to_xyz(s));
    return {gamma_encode(lin.r * exposure), gamma_encode(lin.g * exposure),
            gamma_encode(lin.b * exposure)};
}

} // namespace fluor
