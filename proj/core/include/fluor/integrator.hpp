// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "fluor/film.hpp"
#include "fluor/rng.hpp"
#include "fluor/scene.hpp"

namespace fluor {

struct RenderConfig {
    int spp = 64;
    int max_bounces = 32;
    std::uint64_t seed = 0;
    WavelengthGrid grid = WavelengthGrid::standard();
    /// Adds classical elastic transport at the carried wavelength (visible
    /// light fixtures). Off for validation runs so films hold fluorescence
    /// only.
    bool elastic_component = false;
    /// Study mode: keep walking after the emission contribution instead of
    /// terminating. A second inelastic classification still kills the path.
    bool continue_after_emission = false;
    int threads = 0; // 0 = hardware concurrency

    static RenderConfig from_scene(const Scene& scene);
};

/// Random-walk state. `lambda` is the emission wavelength the path carries
/// from the camera; `inelastic_events` may never pass 1 on a live path.
struct PathState {
    Vec3 position;
    Vec3 direction;
    double lambda = 0.0;
    double throughput = 1.0;
    int bounces = 0;
    int inelastic_events = 0;
    bool alive = true;
};

/// Instrumentation for estimator audits; all counters are per trace batch.
struct PathAudit {
    long paths = 0;
    long contributing_paths = 0;
    long contributing_with_one_inelastic = 0;
    long conversion_events = 0;
    long elastic_events = 0;
    long secondary_inelastic_kills = 0;
    long absorbed = 0;
    /// max |explicit estimator ratio / reduced throughput factor - 1| over
    /// all elastic and surface events.
    double max_weight_deviation = 0.0;
};

/// One camera path at one wavelength. Returns the (non-negative, finite)
/// radiance estimate for that wavelength.
double trace_path(const Scene& scene, int px, int py, double lambda, Rng& rng,
                  const RenderConfig& config, PathAudit* audit = nullptr);

/// Full render: for every pixel and grid wavelength, the mean of spp
/// trace_path estimates. Bit-identical output for any thread count.
Film render(const Scene& scene, const RenderConfig& config);

} // namespace fluor
