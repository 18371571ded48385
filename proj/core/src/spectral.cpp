// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace fluor {

WavelengthGrid::WavelengthGrid(double min_nm, double max_nm, double step_nm)
    : lambda_min(min_nm), lambda_max(max_nm), step(step_nm) {
    if (!(lambda_min <= lambda_max) || !(step > 0.0)) {
        throw InvariantViolationError("wavelength grid requires lambda_min <= lambda_max and step > 0");
    }
    double n = (lambda_max - lambda_min) / step;
    double rounded = std::round(n);
    if (std::abs(n - rounded) > 1e-6) {
        throw InvariantViolationError("grid span must be an integer multiple of step");
    }
    count_ = static_cast<std::size_t>(rounded) + 1;
}

bool WavelengthGrid::operator==(const WavelengthGrid& o) const {
    return lambda_min == o.lambda_min && lambda_max == o.lambda_max && step == o.step;
}

SpectralDistribution::SpectralDistribution(const WavelengthGrid& grid)
    : grid_(grid), values_(grid.count(), 0.0) {}

SpectralDistribution::SpectralDistribution(const WavelengthGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.count()) {
        throw InvariantViolationError("spectral value count does not match grid");
    }
    for (double v : values_) {
        if (!(v >= 0.0)) {
            throw InvariantViolationError("spectral values must be non-negative and finite");
        }
    }
}

SpectralDistribution SpectralDistribution::constant(const WavelengthGrid& grid, double value) {
    return SpectralDistribution(grid, std::vector<double>(grid.count(), value));
}

SpectralDistribution SpectralDistribution::impulse(const WavelengthGrid& grid, double lambda,
                                                   double value) {
    SpectralDistribution s(grid);
    double pos = (lambda - grid.lambda_min) / grid.step;
    long i = std::lround(pos);
    i = std::clamp(i, 0L, static_cast<long>(grid.count()) - 1L);
    s.values_[static_cast<std::size_t>(i)] = value;
    return s;
}

double SpectralDistribution::value(double lambda) const {
    if (values_.empty() || lambda < grid_.lambda_min || lambda > grid_.lambda_max) return 0.0;
    if (values_.size() == 1) {
        return lambda == grid_.lambda_min ? values_[0] : 0.0;
    }
    double pos = (lambda - grid_.lambda_min) / grid_.step;
    auto i = static_cast<std::size_t>(pos);
    if (i >= values_.size() - 1) return values_.back();
    double frac = pos - static_cast<double>(i);
    return values_[i] * (1.0 - frac) + values_[i + 1] * frac;
}

double SpectralDistribution::max_value() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, v);
    return m;
}

double SpectralDistribution::peak_wavelength() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (values_[i] > values_[best]) best = i;
    }
    return grid_.wavelength(best);
}

bool SpectralDistribution::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

SpectralDistribution SpectralDistribution::scaled(double s) const {
    std::vector<double> v = values_;
    for (double& x : v) x *= s;
    return SpectralDistribution(grid_, std::move(v));
}

bool SpectralDistribution::operator==(const SpectralDistribution& o) const {
    return grid_ == o.grid_ && values_ == o.values_;
}

SpectralDistribution resample(const SpectralDistribution& src, const WavelengthGrid& dst_grid) {
    std::vector<double> out(dst_grid.count());
    if (src.size() == 1) {
        // Single-point source: deposit its value on the nearest destination bin.
        double lambda = src.grid().lambda_min;
        for (std::size_t i = 0; i < dst_grid.count(); ++i) {
            out[i] = std::abs(dst_grid.wavelength(i) - lambda) <= dst_grid.step * 0.5
                         ? src[0]
                         : 0.0;
        }
        return SpectralDistribution(dst_grid, std::move(out));
    }
    for (std::size_t i = 0; i < dst_grid.count(); ++i) {
        out[i] = src.value(dst_grid.wavelength(i));
    }
    return SpectralDistribution(dst_grid, std::move(out));
}

double integrate(const SpectralDistribution& s) {
    if (s.size() < 2) return 0.0;
    double sum = 0.5 * (s[0] + s[s.size() - 1]);
    for (std::size_t i = 1; i + 1 < s.size(); ++i) sum += s[i];
    return sum * s.grid().step;
}

SpectralDistribution normalize_pdf(const SpectralDistribution& s) {
    double total = integrate(s);
    if (total <= 0.0) {
        throw ZeroSpectrumError("cannot normalize a spectrum with zero integral");
    }
    return s.scaled(1.0 / total);
}

SpectralDistribution multiply(const SpectralDistribution& a, const SpectralDistribution& b,
                              const WavelengthGrid& grid) {
    std::vector<double> out(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        double lambda = grid.wavelength(i);
        out[i] = a.value(lambda) * b.value(lambda);
    }
    return SpectralDistribution(grid, std::move(out));
}

SpectralSampler::SpectralSampler(const SpectralDistribution& pdf) : pdf_(pdf) {
    if (pdf_.is_zero()) {
        throw ZeroSpectrumError("cannot sample from an all-zero spectrum");
    }
    cdf_.resize(pdf_.size());
    cdf_[0] = 0.0;
    double h = pdf_.grid().step;
    for (std::size_t i = 1; i < pdf_.size(); ++i) {
        cdf_[i] = cdf_[i - 1] + 0.5 * (pdf_[i - 1] + pdf_[i]) * h;
    }
    norm_ = 1.0 / cdf_.back();
}

WavelengthSample SpectralSampler::sample(double u) const {
    double target = u * cdf_.back();
    // first segment whose upper cdf exceeds the target
    auto it = std::upper_bound(cdf_.begin() + 1, cdf_.end(), target);
    std::size_t seg = static_cast<std::size_t>(it - cdf_.begin()) - 1;
    seg = std::min(seg, pdf_.size() - 2);
    double h = pdf_.grid().step;
    double v0 = pdf_[seg];
    double v1 = pdf_[seg + 1];
    double rest = target - cdf_[seg];
    double slope = (v1 - v0) / h;
    double x;
    if (std::abs(slope) < 1e-16) {
        x = v0 > 0.0 ? rest / v0 : 0.0;
    } else {
        // solve slope/2 x^2 + v0 x = rest for x in [0, h]
        double disc = v0 * v0 + 2.0 * slope * rest;
        x = (-v0 + std::sqrt(std::max(0.0, disc))) / slope;
    }
    x = std::clamp(x, 0.0, h);
    double lambda = pdf_.grid().wavelength(seg) + x;
    return {lambda, pdf_.value(lambda) * norm_};
}

double SpectralSampler::cdf(double lambda) const {
    const auto& g = pdf_.grid();
    if (lambda <= g.lambda_min) return 0.0;
    if (lambda >= g.lambda_max) return 1.0;
    double pos = (lambda - g.lambda_min) / g.step;
    auto i = static_cast<std::size_t>(pos);
    double x = (pos - static_cast<double>(i)) * g.step;
    double v0 = pdf_[i];
    double slope = (pdf_[i + 1] - v0) / g.step;
    double partial = v0 * x + 0.5 * slope * x * x;
    return (cdf_[i] + partial) / cdf_.back();
}

WavelengthSample sample_wavelength(const SpectralDistribution& pdf, double u) {
    return SpectralSampler(pdf).sample(u);
}

} // namespace fluor
