// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fluor/spectral.hpp"

namespace fluor {

/// A fluorescent dye: intrinsic spectra plus the scalar constants that set
/// its absorption strength and conversion efficiency.
struct Fluorophore {
    std::string name;
    SpectralDistribution excitation; // relative, peak value 1
    SpectralDistribution emission;   // relative, peak value 1
    double epsilon_max = 0.0;        // molar absorptivity at the excitation peak, L mol^-1 cm^-1
    double quantum_yield = 0.0;      // in [0, 1]
    double molecular_weight = 0.0;   // g/mol
    double emission_integral = 0.0;  // cached trapezoid of `emission`

    double excitation_peak() const { return excitation.peak_wavelength(); }
    double emission_peak() const { return emission.peak_wavelength(); }
};

struct DissolvedFluorophore {
    Fluorophore dye;
    double concentration = 0.0; // g/L
};

/// Read a `wavelength_nm,value` CSV (one header line) into a distribution
/// on the file's own grid.
SpectralDistribution read_spectrum_csv(const std::filesystem::path& path);

/// Load `<dir>/<name>/{excitation.csv, emission.csv, meta.txt}` and resample
/// both curves onto the standard grid.
Fluorophore load_fluorophore(const std::filesystem::path& dir, const std::string& name);

/// Beer-Lambert absorption coefficient of the dissolved dye at lambda, in
/// m^-1. The per-wavelength molar absorptivity is reconstructed as
/// epsilon_max times the normalized excitation shape.
double fluor_absorption_coefficient(const DissolvedFluorophore& d, double lambda);

/// Spectral excitation-to-emission conversion,
///   F_f(lambda_x, lambda) = f_m(lambda) dl / integral(f_m) * f_x(lambda_x).
double excitation_to_emission(const Fluorophore& f, double lambda_x, double lambda,
                              double delta_lambda);

/// Draw an emission wavelength from the normalized emission spectrum.
WavelengthSample sample_emission(const Fluorophore& f, double u);

/// Directory-backed dye collection with lazy loading.
class FluorophoreDatabase {
public:
    explicit FluorophoreDatabase(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }
    const Fluorophore& get(const std::string& name);
    std::vector<std::string> list() const;

private:
    std::filesystem::path dir_;
    std::map<std::string, Fluorophore> cache_;
};

} // namespace fluor
