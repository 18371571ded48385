// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fluor/fluorophore.hpp"
#include "fluor/geometry.hpp"
#include "fluor/spectral.hpp"

namespace fluor {

enum class MediumEventType { ElasticScatter, FluorescentEmission, Absorbed };

struct MediumEvent {
    MediumEventType type = MediumEventType::Absorbed;
    int fluorophore = -1; // set for FluorescentEmission
};

struct FreeFlightSample {
    double distance = 0.0;
    double pdf = 0.0;
};

/// Homogeneous participating medium: spectral background coefficients, an HG
/// phase function, and zero or more dissolved dyes. Immutable once built.
class Medium {
public:
    Medium(const SpectralDistribution& sigma_a_bg, const SpectralDistribution& sigma_s_bg,
           double phase_g, std::vector<DissolvedFluorophore> fluorophores,
           const WavelengthGrid& grid);

    const WavelengthGrid& grid() const { return grid_; }
    double phase_g() const { return phase_g_; }
    const std::vector<DissolvedFluorophore>& fluorophores() const { return fluorophores_; }

    double sigma_a_bg(double lambda) const { return sigma_a_bg_.value(lambda); }
    double sigma_s_bg(double lambda) const { return sigma_s_bg_.value(lambda); }
    /// Extinction: background absorption + scattering + dye absorption.
    double sigma_t(double lambda) const { return sigma_t_.value(lambda); }
    double sigma_a_fluor(int k, double lambda) const {
        return fluor_absorption_coefficient(fluorophores_[static_cast<std::size_t>(k)], lambda);
    }

    /// Inelastic collision coefficient for camera-first walks at the carried
    /// emission wavelength: peak dye absorption x quantum yield x normalized
    /// emission line shape x grid step. Nonzero exactly on the emission band,
    /// which is where conversion vertices must be generated; it is not part
    /// of the physical extinction.
    double sigma_conversion(double lambda) const { return sigma_conv_total_.value(lambda); }
    double sigma_conversion(int k, double lambda) const {
        return sigma_conv_[static_cast<std::size_t>(k)].value(lambda);
    }

    /// exp(-sigma_t * |b - a|); 1 when a == b.
    double transmittance(const Vec3& a, const Vec3& b, double lambda) const;

    /// Analog distance sampling: t = -ln(1-u)/sigma_t.
    FreeFlightSample sample_free_flight(double lambda, double u) const;

    /// Event split at a collision: elastic sigma_s_bg/sigma_t, emission via
    /// dye k with (sigma_af_k/sigma_t) * Q_k, absorbed otherwise.
    MediumEvent classify_event(double lambda, double u) const;

private:
    WavelengthGrid grid_;
    SpectralDistribution sigma_a_bg_;
    SpectralDistribution sigma_s_bg_;
    SpectralDistribution sigma_t_;
    std::vector<SpectralDistribution> sigma_conv_;
    SpectralDistribution sigma_conv_total_;
    double phase_g_ = 0.0;
    std::vector<DissolvedFluorophore> fluorophores_;
};

} // namespace fluor
