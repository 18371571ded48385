// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/reference.hpp"

#include <cmath>
#include <vector>

#include "fluor/errors.hpp"

namespace fluor {
namespace {

struct DyeTerms {
    double vertex_density = 0.0; // K Q f_m(lambda) dl / int(f_m)
    const Fluorophore* dye = nullptr;
};

// Composite Simpson over [a, b] with n (even) intervals.
template <typename F>
double simpson(double a, double b, int n, F&& f) {
    double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        sum += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

double evaluate(const Medium& medium, const Light& light, const Ray& ray, double t_enter,
                double t_exit, double lambda, const std::vector<DyeTerms>& dyes, int n_t,
                int n_area, int n_lambda) {
    double sigma_t_emission = medium.sigma_t(lambda);
    const auto* quad = std::get_if<Quad>(&light.shape);
    if (quad == nullptr) {
        throw InvariantViolationError("the slab reference needs a quad light");
    }
    Vec3 light_n = normalize(cross(quad->edge_u, quad->edge_v));
    double area = shape_area(light.shape);

    // excitation wavelengths: the light SPD support intersected with the grid
    const auto& grid = light.spd.grid();
    double lx_min = grid.lambda_max, lx_max = grid.lambda_min;
    for (std::size_t i = 0; i < light.spd.size(); ++i) {
        if (light.spd[i] > 0.0) {
            lx_min = std::min(lx_min, grid.wavelength(i) - grid.step);
            lx_max = std::max(lx_max, grid.wavelength(i) + grid.step);
        }
    }
    if (lx_max <= lx_min) return 0.0;
    lx_min = std::max(lx_min, grid.lambda_min);
    lx_max = std::min(lx_max, grid.lambda_max);

    // per camera-vertex integrand, area and wavelength integrals inside
    auto vertex_term = [&](double t) {
        Vec3 x = ray.at(t);
        double camera_side = std::exp(-sigma_t_emission * (t - t_enter));
        // midpoint rule over the light surface
        double area_sum = 0.0;
        for (int iu = 0; iu < n_area; ++iu) {
            for (int iv = 0; iv < n_area; ++iv) {
                double u = (iu + 0.5) / n_area;
                double v = (iv + 0.5) / n_area;
                Vec3 p = quad->corner + quad->edge_u * u + quad->edge_v * v;
                Vec3 delta = x - p; // light point to vertex
                double dist2 = length_squared(delta);
                double dist = std::sqrt(dist2);
                double cos_l = dot(light_n, delta / dist);
                if (light.two_sided) cos_l = std::abs(cos_l);
                if (cos_l <= 0.0) continue;
                // excitation-side transmittance over the full distance (the
                // light sits inside the medium) and the SPD-weighted spectra
                double lam_sum = simpson(lx_min, lx_max, n_lambda, [&](double lx) {
                    double radiance = light.spd.value(lx);
                    if (radiance <= 0.0) return 0.0;
                    double tr = std::exp(-medium.sigma_t(lx) * dist);
                    double per_dye = 0.0;
                    for (const auto& d : dyes) {
                        per_dye += d.vertex_density * d.dye->excitation.value(lx);
                    }
                    return radiance * tr * per_dye;
                });
                area_sum += lam_sum * cos_l / dist2;
            }
        }
        area_sum *= area / (n_area * n_area);
        return camera_side * kInv4Pi * area_sum;
    };

    return simpson(t_enter, t_exit, n_t, vertex_term);
}

} // namespace

double single_scatter_reference(const Medium& medium, const Light& light, const Ray& camera_ray,
                                double t_enter, double t_exit, double lambda) {
    std::vector<DyeTerms> dyes;
    for (const auto& d : medium.fluorophores()) {
        double peak_sigma = std::log(10.0) * d.dye.epsilon_max *
                            (d.concentration / d.dye.molecular_weight) * 100.0;
        DyeTerms t;
        t.vertex_density = peak_sigma * d.dye.quantum_yield * medium.grid().step *
                           d.dye.emission.value(lambda) / d.dye.emission_integral;
        t.dye = &d.dye;
        if (t.vertex_density > 0.0) dyes.push_back(t);
    }
    if (dyes.empty()) return 0.0;

    double coarse = evaluate(medium, light, camera_ray, t_enter, t_exit, lambda, dyes,
                             32, 12, 64);
    double fine = evaluate(medium, light, camera_ray, t_enter, t_exit, lambda, dyes,
                           64, 24, 128);
    if (fine != 0.0 && std::abs(fine - coarse) / std::abs(fine) > 0.005) {
        throw NonConvergentError("single-scatter quadrature moved more than 0.5% under doubling");
    }
    return fine;
}

} // namespace fluor
