// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/builtin_spectra.hpp"

#include <cmath>

#include "fluor/errors.hpp"

namespace fluor {
namespace {

// Pure-water absorption coefficient, m^-1, coarse table at 20 nm
// (Pope & Fry class measurements, rounded).
constexpr double kWaterAbsMin = 300.0;
constexpr double kWaterAbsStep = 20.0;
constexpr double kWaterAbs[] = {
    0.1410, 0.0844, 0.0463, 0.0240, 0.0141, // 300-380
    0.0066, 0.0047, 0.0045, 0.0049, 0.0064, // 400-480
    0.0204, 0.0409, 0.0474, 0.0619, 0.0862, // 500-580
    0.2224, 0.2644, 0.3292, 0.4100, 0.4650, // 600-680
    0.6240, 1.0400, 2.3800, 2.4700, 2.3500, // 700-780
    2.0700,                                 // 800
};

double water_absorption(double lambda) {
    double pos = (lambda - kWaterAbsMin) / kWaterAbsStep;
    int n = static_cast<int>(std::size(kWaterAbs));
    if (pos <= 0.0) return kWaterAbs[0];
    if (pos >= n - 1) return kWaterAbs[n - 1];
    int i = static_cast<int>(pos);
    double f = pos - i;
    return kWaterAbs[i] * (1.0 - f) + kWaterAbs[i + 1] * f;
}

// Pure-water scattering, m^-1: 0.0029 at 500 nm with a lambda^-4.3 slope
// (Morel). The paper-style "highly scattering solvent" scales this by 100.
double water_scattering(double lambda) {
    return 0.0029 * std::pow(500.0 / lambda, 4.3);
}

} // namespace

SpectralDistribution builtin_spectrum(const std::string& name, const WavelengthGrid& grid,
                                      double scale) {
    double (*fn)(double) = nullptr;
    if (name == "water_absorption") fn = &water_absorption;
    if (name == "water_scattering") fn = &water_scattering;
    if (fn == nullptr) {
        throw ValidationError("unknown builtin spectrum `" + name + "`");
    }
    std::vector<double> v(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        v[i] = fn(grid.wavelength(i)) * scale;
    }
    return SpectralDistribution(grid, std::move(v));
}

} // namespace fluor
