// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "fluor/errors.hpp"

namespace fluor {

/// Regular wavelength grid in nanometers, endpoints inclusive.
struct WavelengthGrid {
    double lambda_min = 300.0;
    double lambda_max = 800.0;
    double step = 1.0;

    WavelengthGrid() = default;
    WavelengthGrid(double min_nm, double max_nm, double step_nm);

    std::size_t count() const { return count_; }
    double wavelength(std::size_t i) const { return lambda_min + step * static_cast<double>(i); }
    bool contains(double lambda) const { return lambda >= lambda_min && lambda <= lambda_max; }
    bool operator==(const WavelengthGrid& o) const;

    /// 300-800 nm at 1 nm, the grid renders run on unless a scene overrides it.
    static WavelengthGrid standard() { return {300.0, 800.0, 1.0}; }

private:
    std::size_t count_ = 501;
};

/// Tabulated non-negative function of wavelength. Lookups interpolate
/// linearly between samples and are zero outside [lambda_min, lambda_max].
class SpectralDistribution {
public:
    SpectralDistribution() = default;
    explicit SpectralDistribution(const WavelengthGrid& grid); // all zeros
    SpectralDistribution(const WavelengthGrid& grid, std::vector<double> values);
    static SpectralDistribution constant(const WavelengthGrid& grid, double value);
    /// Single spike at the grid point nearest to lambda, zero elsewhere.
    static SpectralDistribution impulse(const WavelengthGrid& grid, double lambda, double value);

    const WavelengthGrid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double& at(std::size_t i) { return values_[i]; }

    /// Interpolated lookup; zero outside the grid support.
    double value(double lambda) const;

    double max_value() const;
    /// Wavelength of the largest sample (first one on ties).
    double peak_wavelength() const;
    bool is_zero() const;

    SpectralDistribution scaled(double s) const;

    bool operator==(const SpectralDistribution& o) const;

private:
    WavelengthGrid grid_;
    std::vector<double> values_;
};

SpectralDistribution resample(const SpectralDistribution& src, const WavelengthGrid& dst_grid);

/// Trapezoidal integral over the distribution's own grid.
double integrate(const SpectralDistribution& s);

/// Rescale so the trapezoidal integral is one.
SpectralDistribution normalize_pdf(const SpectralDistribution& s);

/// Pointwise product evaluated on `grid`.
SpectralDistribution multiply(const SpectralDistribution& a, const SpectralDistribution& b,
                              const WavelengthGrid& grid);

struct WavelengthSample {
    double lambda = 0.0;
    double pdf = 0.0; // per-nm density at lambda
};

/// Precomputed inverse-CDF sampler for a piecewise-linear spectral pdf.
class SpectralSampler {
public:
    explicit SpectralSampler(const SpectralDistribution& pdf);

    WavelengthSample sample(double u) const;
    double pdf(double lambda) const { return pdf_.value(lambda) * norm_; }
    double cdf(double lambda) const;

private:
    SpectralDistribution pdf_;
    std::vector<double> cdf_; // at grid nodes, cdf_[0] == 0
    double norm_ = 1.0;       // input need not integrate to one
};

/// Inverse-CDF draw from a normalized pdf. Deterministic in u.
WavelengthSample sample_wavelength(const SpectralDistribution& pdf, double u);

} // namespace fluor
