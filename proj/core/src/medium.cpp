// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/medium.hpp"

#include <cmath>

#include "fluor/errors.hpp"

namespace fluor {

Medium::Medium(const SpectralDistribution& sigma_a_bg, const SpectralDistribution& sigma_s_bg,
               double phase_g, std::vector<DissolvedFluorophore> fluorophores,
               const WavelengthGrid& grid)
    : grid_(grid),
      sigma_a_bg_(resample(sigma_a_bg, grid)),
      sigma_s_bg_(resample(sigma_s_bg, grid)),
      phase_g_(phase_g),
      fluorophores_(std::move(fluorophores)) {
    if (!(phase_g_ > -1.0 && phase_g_ < 1.0)) {
        throw InvariantViolationError("phase asymmetry must lie in (-1, 1)");
    }
    for (const auto& d : fluorophores_) {
        if (d.concentration < 0.0) {
            throw InvariantViolationError("negative dye concentration");
        }
    }

    std::vector<double> sigma_t(grid_.count());
    std::vector<double> conv_total(grid_.count(), 0.0);
    for (std::size_t i = 0; i < grid_.count(); ++i) {
        double lambda = grid_.wavelength(i);
        double t = sigma_a_bg_[i] + sigma_s_bg_[i];
        for (const auto& d : fluorophores_) {
            t += fluor_absorption_coefficient(d, lambda);
        }
        sigma_t[i] = t;
    }
    sigma_t_ = SpectralDistribution(grid_, std::move(sigma_t));

    sigma_conv_.reserve(fluorophores_.size());
    for (const auto& d : fluorophores_) {
        // peak absorption: excitation shape is 1 at its peak
        double peak_sigma = std::log(10.0) * d.dye.epsilon_max *
                            (d.concentration / d.dye.molecular_weight) * 100.0;
        double rate = peak_sigma * d.dye.quantum_yield * grid_.step / d.dye.emission_integral;
        std::vector<double> conv(grid_.count());
        for (std::size_t i = 0; i < grid_.count(); ++i) {
            conv[i] = rate * d.dye.emission.value(grid_.wavelength(i));
            conv_total[i] += conv[i];
        }
        sigma_conv_.emplace_back(grid_, std::move(conv));
    }
    sigma_conv_total_ = SpectralDistribution(grid_, std::move(conv_total));
}

double Medium::transmittance(const Vec3& a, const Vec3& b, double lambda) const {
    double dist = length(b - a);
    if (dist == 0.0) return 1.0;
    return std::exp(-sigma_t(lambda) * dist);
}

FreeFlightSample Medium::sample_free_flight(double lambda, double u) const {
    double st = sigma_t(lambda);
    if (st <= 0.0) {
        throw VacuumMediumError("free flight requested with zero extinction");
    }
    double t = -std::log(1.0 - u) / st;
    return {t, st * std::exp(-st * t)};
}

MediumEvent Medium::classify_event(double lambda, double u) const {
    double st = sigma_t(lambda);
    if (st <= 0.0) {
        throw VacuumMediumError("event classification requires positive extinction");
    }
    double threshold = sigma_s_bg(lambda) / st;
    if (u < threshold) {
        return {MediumEventType::ElasticScatter, -1};
    }
    for (std::size_t k = 0; k < fluorophores_.size(); ++k) {
        const auto& d = fluorophores_[k];
        threshold += fluor_absorption_coefficient(d, lambda) / st * d.dye.quantum_yield;
        if (u < threshold) {
            return {MediumEventType::FluorescentEmission, static_cast<int>(k)};
        }
    }
    return {MediumEventType::Absorbed, -1};
}

} // namespace fluor
