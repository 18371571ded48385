// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/phase.hpp"

#include <cmath>

namespace fluor {

double phase_eval(double g, double cos_theta) {
    double denom = 1.0 + g * g - 2.0 * g * cos_theta;
    return kInv4Pi * (1.0 - g * g) / (denom * std::sqrt(denom));
}

PhaseSample phase_sample(double g, const Vec3& incident_dir, double u1, double u2) {
    double cos_theta;
    if (std::abs(g) < 1e-6) {
        cos_theta = 1.0 - 2.0 * u1;
    } else {
        double sqr = (1.0 - g * g) / (1.0 - g + 2.0 * g * u1);
        cos_theta = (1.0 + g * g - sqr * sqr) / (2.0 * g);
    }
    double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    double phi = 2.0 * kPi * u2;
    Frame frame(incident_dir);
    Vec3 dir = frame.to_world({sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta});
    return {dir, phase_eval(g, cos_theta)};
}

} // namespace fluor
