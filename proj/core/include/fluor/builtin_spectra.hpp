// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "fluor/spectral.hpp"

namespace fluor {

/// Named built-in coefficient curves, resampled onto `grid` and multiplied
/// by `scale`. Available: "water_absorption", "water_scattering" (pure water,
/// m^-1). Throws ValidationError for unknown names.
SpectralDistribution builtin_spectrum(const std::string& name, const WavelengthGrid& grid,
                                      double scale);

} // namespace fluor
