// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "fluor/errors.hpp"

namespace fluor {

ProfileComparison compare_profiles(const SpectralDistribution& rendered,
                                   const SpectralDistribution& reference) {
    if (rendered.is_zero() || reference.is_zero()) {
        throw ZeroSpectrumError("profile comparison needs two nonzero spectra");
    }
    auto a = rendered.scaled(1.0 / rendered.max_value());
    auto b = resample(reference, rendered.grid());
    b = b.scaled(1.0 / b.max_value());

    double sum_sq = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > 0.0 || b[i] > 0.0) {
            double d = a[i] - b[i];
            sum_sq += d * d;
            ++n;
        }
    }
    ProfileComparison out;
    out.normalized_rmse = n > 0 ? std::sqrt(sum_sq / static_cast<double>(n)) : 0.0;
    out.peak_error_nm = std::abs(a.peak_wavelength() - b.peak_wavelength());
    return out;
}

ValidationReport profile_test(const Scene& scene, const Fluorophore& dye,
                              const RenderConfig& config, const ValidationTolerances& tol) {
    Film film = render(scene, config);
    auto spd = film.scene_spd();
    auto cmp = compare_profiles(spd, dye.emission);

    ValidationReport report;
    report.dye = dye.name;
    report.normalized_rmse = cmp.normalized_rmse;
    report.peak_error_nm = cmp.peak_error_nm;
    report.pass = cmp.normalized_rmse < tol.profile_rmse && cmp.peak_error_nm <= tol.peak_error_nm;
    return report;
}

namespace {

Scene with_monochromatic_lights(const Scene& base, double lambda, double power) {
    Scene scene = base;
    for (auto& light : scene.lights) {
        light.spd = SpectralDistribution::impulse(scene.grid, lambda, power);
    }
    scene.finalize();
    return scene;
}

} // namespace

ValidationReport scaling_test(const Scene& scene_template, const Fluorophore& dye,
                              const std::vector<double>& excitation_lambdas,
                              const RenderConfig& config, const ValidationTolerances& tol) {
    double lambda_max = dye.excitation_peak();
    std::vector<double> lambdas = excitation_lambdas;
    if (std::find(lambdas.begin(), lambdas.end(), lambda_max) == lambdas.end()) {
        lambdas.push_back(lambda_max);
    }

    std::vector<double> integrals(lambdas.size(), 0.0);
    std::vector<SpectralDistribution> spds(lambdas.size());
    double reference_integral = 0.0;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        Scene scene = with_monochromatic_lights(scene_template, lambdas[i], 1.0);
        Film film = render(scene, config);
        try {
            spds[i] = film.scene_spd();
            integrals[i] = integrate(spds[i]);
        } catch (const NoIlluminatedPixelsError&) {
            // nothing lit at this excitation: zero intensity
        }
        if (lambdas[i] == lambda_max) reference_integral = integrals[i];
    }
    if (reference_integral <= 0.0) {
        throw ValidationError(dye.name + ": no signal at the maximum excitation wavelength");
    }

    ValidationReport report;
    report.dye = dye.name;
    report.pass = true;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        ScalingPoint p;
        p.lambda_x = lambdas[i];
        p.measured = integrals[i] / reference_integral;
        p.expected = dye.excitation.value(lambdas[i]);
        if (std::abs(p.measured - p.expected) >= tol.scaling) report.pass = false;
        report.scaling_points.push_back(p);
    }

    // emission profile must not depend on the excitation wavelength
    double worst = 0.0;
    for (std::size_t i = 0; i < spds.size(); ++i) {
        for (std::size_t j = i + 1; j < spds.size(); ++j) {
            if (spds[i].is_zero() || spds[j].is_zero()) continue;
            worst = std::max(worst, compare_profiles(spds[i], spds[j]).normalized_rmse);
        }
    }
    report.normalized_rmse = worst;
    if (worst >= tol.profile_rmse) report.pass = false;
    return report;
}

void write_report(const ValidationReport& report, const std::filesystem::path& csv_path) {
    std::ofstream out(csv_path);
    if (!out) throw IoError("cannot write " + csv_path.string());
    out << "dye,normalized_rmse,peak_error_nm,pass\n";
    out << report.dye << "," << report.normalized_rmse << "," << report.peak_error_nm << ","
        << (report.pass ? 1 : 0) << "\n";
    if (!report.scaling_points.empty()) {
        out << "lambda_x,measured,expected\n";
        for (const auto& p : report.scaling_points) {
            out << p.lambda_x << "," << p.measured << "," << p.expected << "\n";
        }
    }
}

void print_report(const ValidationReport& report) {
    std::printf("dye %s: rmse=%.4f peak_error=%.1f nm %s\n", report.dye.c_str(),
                report.normalized_rmse, report.peak_error_nm, report.pass ? "PASS" : "FAIL");
    for (const auto& p : report.scaling_points) {
        std::printf("  lambda_x=%.0f nm measured=%.3f expected=%.3f\n", p.lambda_x, p.measured,
                    p.expected);
    }
}

} // namespace fluor
