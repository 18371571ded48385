// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fluor/medium.hpp"
#include "fluor/scene.hpp"

namespace fluor {

/// Deterministic quadrature for the single-conversion radiance along one
/// camera ray through a homogeneous slab with a single area light placed
/// inside the medium and nothing occluding the connections. Serves as the
/// independent check for the Monte Carlo estimator; it never runs in the
/// renderer itself.
///
/// The integrand along the chord [t_enter, t_exit], over the light surface
/// and the excitation wavelengths:
///   exp(-sigma_t(l) (t - t0)) * sum_k K_k Q_k f_mk(l) dl / int(f_mk)
///   * 1/(4 pi) * L(lx) f_xk(lx) exp(-sigma_t(lx) d) * cos_l / d^2
/// with K_k the dye's peak Beer-Lambert coefficient.
///
/// Quadrature resolution doubles once; a relative shift above 0.5% raises
/// NonConvergentError.
double single_scatter_reference(const Medium& medium, const Light& light, const Ray& camera_ray,
                                double t_enter, double t_exit, double lambda);

} // namespace fluor
