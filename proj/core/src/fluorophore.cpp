// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/fluorophore.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fluor/errors.hpp"

namespace fluor {

// CSV layout: one header line, then `wavelength_nm,value` rows on a regular,
// strictly increasing grid. Values may come in 0-1 or 0-100 scale.
SpectralDistribution read_spectrum_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingFileError("cannot open " + path.string());
    }
    std::string line;
    std::vector<double> lambdas;
    std::vector<double> values;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) continue; // header
        if (line.empty()) continue;
        std::istringstream ss(line);
        double lambda = 0.0, v = 0.0;
        char comma = 0;
        if (!(ss >> lambda >> comma >> v) || comma != ',') {
            throw MalformedCsvError(path.string(), line_no, "expected `wavelength,value`");
        }
        if (!std::isfinite(lambda) || !std::isfinite(v)) {
            throw MalformedCsvError(path.string(), line_no, "non-finite number");
        }
        if (v < 0.0) {
            throw MalformedCsvError(path.string(), line_no, "negative spectral value");
        }
        if (!lambdas.empty() && lambda <= lambdas.back()) {
            throw MalformedCsvError(path.string(), line_no, "wavelengths must increase");
        }
        lambdas.push_back(lambda);
        values.push_back(v);
    }
    if (lambdas.empty()) {
        throw MalformedCsvError(path.string(), line_no, "no data rows");
    }
    if (lambdas.size() == 1) {
        return SpectralDistribution(WavelengthGrid(lambdas[0], lambdas[0], 1.0),
                                    std::move(values));
    }
    double step = lambdas[1] - lambdas[0];
    for (std::size_t i = 1; i < lambdas.size(); ++i) {
        double expect = lambdas[0] + step * static_cast<double>(i);
        if (std::abs(lambdas[i] - expect) > 1e-6) {
            throw MalformedCsvError(path.string(), static_cast<int>(i) + 2,
                                    "grid spacing is not uniform");
        }
    }
    return SpectralDistribution(WavelengthGrid(lambdas.front(), lambdas.back(), step),
                                std::move(values));
}

namespace {

std::map<std::string, double> read_meta(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw MissingFileError("cannot open " + path.string());
    }
    std::map<std::string, double> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), [](char c) { return std::isspace(c); }),
                  key.end());
        if (key.empty()) continue;
        out[key] = std::stod(line.substr(eq + 1));
    }
    return out;
}

SpectralDistribution peak_normalized(const SpectralDistribution& s) {
    double m = s.max_value();
    return m > 0.0 ? s.scaled(1.0 / m) : s;
}

} // namespace

Fluorophore load_fluorophore(const std::filesystem::path& dir, const std::string& name) {
    auto base = dir / name;
    if (!std::filesystem::exists(base)) {
        throw MissingFileError("no fluorophore directory " + base.string());
    }
    Fluorophore f;
    f.name = name;
    auto grid = WavelengthGrid::standard();
    f.excitation = peak_normalized(resample(read_spectrum_csv(base / "excitation.csv"), grid));
    f.emission = peak_normalized(resample(read_spectrum_csv(base / "emission.csv"), grid));
    f.emission_integral = integrate(f.emission);

    auto meta = read_meta(base / "meta.txt");
    auto require = [&](const char* key) {
        auto it = meta.find(key);
        if (it == meta.end()) {
            throw InvariantViolationError(name + ": meta.txt lacks " + key);
        }
        return it->second;
    };
    f.epsilon_max = require("epsilon_max");
    f.quantum_yield = require("quantum_yield");
    f.molecular_weight = require("molecular_weight");

    if (f.quantum_yield < 0.0 || f.quantum_yield > 1.0) {
        throw InvariantViolationError(name + ": quantum yield outside [0, 1]");
    }
    if (f.molecular_weight <= 0.0) {
        throw InvariantViolationError(name + ": molecular weight must be positive");
    }
    if (f.epsilon_max < 0.0) {
        throw InvariantViolationError(name + ": molar absorptivity must be non-negative");
    }
    if (f.excitation.is_zero() || f.emission.is_zero()) {
        throw InvariantViolationError(name + ": empty spectrum");
    }
    if (f.emission_peak() < f.excitation_peak()) {
        throw InvariantViolationError(name + ": negative Stokes shift");
    }
    return f;
}

double fluor_absorption_coefficient(const DissolvedFluorophore& d, double lambda) {
    // epsilon in L mol^-1 cm^-1, molarity in mol/L; x100 converts cm^-1 to m^-1
    double epsilon = d.dye.epsilon_max * d.dye.excitation.value(lambda);
    double molarity = d.concentration / d.dye.molecular_weight;
    return std::log(10.0) * epsilon * molarity * 100.0;
}

double excitation_to_emission(const Fluorophore& f, double lambda_x, double lambda,
                              double delta_lambda) {
    if (f.emission_integral <= 0.0) {
        throw ZeroSpectrumError(f.name + ": emission spectrum integrates to zero");
    }
    return f.emission.value(lambda) * delta_lambda / f.emission_integral *
           f.excitation.value(lambda_x);
}

WavelengthSample sample_emission(const Fluorophore& f, double u) {
    return sample_wavelength(normalize_pdf(f.emission), u);
}

const Fluorophore& FluorophoreDatabase::get(const std::string& name) {
    auto it = cache_.find(name);
    if (it != cache_.end()) return it->second;
    if (!std::filesystem::exists(dir_ / name)) {
        throw UnknownFluorophoreError("unknown fluorophore `" + name + "` (database: " +
                                      dir_.string() + ")");
    }
    return cache_.emplace(name, load_fluorophore(dir_, name)).first->second;
}

std::vector<std::string> FluorophoreDatabase::list() const {
    std::vector<std::string> names;
    if (!std::filesystem::exists(dir_)) return names;
    for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
        if (entry.is_directory()) names.push_back(entry.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

} // namespace fluor
