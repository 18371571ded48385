// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fluor/geometry.hpp"

namespace fluor {

/// Henyey-Greenstein density over the sphere. `cos_theta` is measured
/// between the incident propagation direction and the scattered direction,
/// so g > 0 is forward scattering. g == 0 gives 1/(4 pi).
double phase_eval(double g, double cos_theta);

struct PhaseSample {
    Vec3 dir;
    double pdf = 0.0;
};

/// Importance-sample the HG lobe around `incident_dir` (propagation
/// direction). The returned pdf equals phase_eval at the sampled direction.
PhaseSample phase_sample(double g, const Vec3& incident_dir, double u1, double u2);

} // namespace fluor
