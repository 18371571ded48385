// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "fluor/integrator.hpp"
#include "fluor/scene.hpp"

namespace fluor {

struct ProfileComparison {
    double normalized_rmse = 0.0;
    double peak_error_nm = 0.0;
};

struct ScalingPoint {
    double lambda_x = 0.0;
    double measured = 0.0; // SPD integral relative to the max-excitation run
    double expected = 0.0; // normalized excitation value at lambda_x
};

struct ValidationReport {
    std::string dye;
    double normalized_rmse = 0.0;
    double peak_error_nm = 0.0;
    std::vector<ScalingPoint> scaling_points;
    bool pass = false;
};

struct ValidationTolerances {
    double profile_rmse = 0.05;
    double peak_error_nm = 5.0;
    double scaling = 0.1;
};

/// Peak-normalize both spectra and compare over the union of their supports.
ProfileComparison compare_profiles(const SpectralDistribution& rendered,
                                   const SpectralDistribution& reference);

/// Render the scene and compare its scene SPD against the dye's bundled
/// emission spectrum.
ValidationReport profile_test(const Scene& scene, const Fluorophore& dye,
                              const RenderConfig& config,
                              const ValidationTolerances& tol = {});

/// Re-render the scene once per excitation wavelength (all lights switched
/// to a monochromatic SPD at that wavelength) and compare the relative SPD
/// integrals against the normalized excitation spectrum. The dye's maximum
/// excitation wavelength is always rendered as the reference point. Also
/// fills normalized_rmse with the largest pairwise profile RMSE across runs.
ValidationReport scaling_test(const Scene& scene_template, const Fluorophore& dye,
                              const std::vector<double>& excitation_lambdas,
                              const RenderConfig& config,
                              const ValidationTolerances& tol = {});

/// CSV plus human-readable lines, CI-friendly.
void write_report(const ValidationReport& report, const std::filesystem::path& csv_path);
void print_report(const ValidationReport& report);

} // namespace fluor
