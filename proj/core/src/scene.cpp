// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/scene.hpp"

#include <algorithm>
#include <cmath>

#include "fluor/errors.hpp"

namespace fluor {

Ray Camera::generate_ray(int x, int y, double u1, double u2) const {
    Vec3 forward = normalize(look_at - position);
    Vec3 right = normalize(cross(forward, up));
    Vec3 cam_up = cross(right, forward);
    double tan_half = std::tan(vfov_deg * kPi / 180.0 * 0.5);
    double aspect = static_cast<double>(width) / static_cast<double>(height);
    double px = (static_cast<double>(x) + u1) / static_cast<double>(width);
    double py = (static_cast<double>(y) + u2) / static_cast<double>(height);
    double sx = (2.0 * px - 1.0) * tan_half * aspect;
    double sy = (1.0 - 2.0 * py) * tan_half;
    return {position, normalize(forward + right * sx + cam_up * sy)};
}

void Scene::finalize() {
    for (auto& light : lights) {
        light.area = shape_area(light.shape);
    }
    camera_media_ = media_at(camera.position);
    excitation_.assign(lights.size(), {});
    for (std::size_t l = 0; l < lights.size(); ++l) {
        excitation_[l].resize(media.size());
        for (std::size_t m = 0; m < media.size(); ++m) {
            const auto& dyes = media[m].fluorophores();
            excitation_[l][m].resize(dyes.size());
            for (std::size_t k = 0; k < dyes.size(); ++k) {
                auto product = multiply(lights[l].spd, dyes[k].dye.excitation, grid);
                ExcitationSampler& slot = excitation_[l][m][k];
                slot.integral = integrate(product);
                if (slot.integral > 0.0) {
                    slot.sampler = std::make_shared<const SpectralSampler>(product);
                }
            }
        }
    }
}

const ExcitationSampler& Scene::excitation_sampler(int light, int medium, int dye) const {
    return excitation_[static_cast<std::size_t>(light)][static_cast<std::size_t>(medium)]
                      [static_cast<std::size_t>(dye)];
}

std::optional<Hit> Scene::intersect(const Ray& ray, double t_min, double t_max) const {
    std::optional<Hit> best;
    double closest = t_max;
    for (std::size_t i = 0; i < primitives.size(); ++i) {
        if (auto h = intersect_shape(primitives[i].shape, ray, t_min, closest)) {
            if (best && h->t >= closest) continue; // first declaration wins ties
            closest = h->t;
            Hit hit;
            hit.t = h->t;
            hit.point = h->point;
            hit.normal = h->normal;
            hit.entering = h->entering;
            hit.primitive = static_cast<int>(i);
            hit.material = &primitives[i].material;
            best = hit;
        }
    }
    for (std::size_t i = 0; i < lights.size(); ++i) {
        if (auto h = intersect_shape(lights[i].shape, ray, t_min, closest)) {
            if (best && h->t >= closest) continue;
            closest = h->t;
            Hit hit;
            hit.t = h->t;
            hit.point = h->point;
            hit.normal = h->normal;
            hit.entering = h->entering;
            hit.light = static_cast<int>(i);
            best = hit;
        }
    }
    return best;
}

namespace {

bool blocks(const Material& m) { return !std::holds_alternative<SmoothDielectric>(m); }

} // namespace

bool Scene::visible(const Vec3& a, const Vec3& b) const {
    Vec3 delta = b - a;
    double dist = length(delta);
    if (dist == 0.0) return true;
    Ray ray{a, delta / dist};
    double t_max = dist - kShadowEpsilon;
    double t = kShadowEpsilon;
    while (t < t_max) {
        auto hit = intersect(ray, t, t_max);
        if (!hit) return true;
        if (hit->light >= 0) return false;
        if (blocks(*hit->material)) return false;
        t = hit->t + kShadowEpsilon;
    }
    return true;
}

double Scene::attenuated_visibility(const Vec3& a, const Vec3& b, double lambda) const {
    Vec3 delta = b - a;
    double dist = length(delta);
    if (dist == 0.0) return 1.0;
    Ray ray{a, delta / dist};

    // media the segment starts inside of
    std::vector<int> stack = media_at(a);

    double optical_depth = 0.0;
    double t_prev = 0.0;
    double t_max = dist - kShadowEpsilon;
    double t = kShadowEpsilon;
    while (t < t_max) {
        auto hit = intersect(ray, t, t_max);
        if (!hit) break;
        if (hit->light >= 0 || blocks(*hit->material)) return 0.0;
        const Primitive& prim = primitives[static_cast<std::size_t>(hit->primitive)];
        if (!stack.empty()) {
            optical_depth += media[static_cast<std::size_t>(stack.back())].sigma_t(lambda) *
                             (hit->t - t_prev);
        }
        if (prim.interior_medium >= 0) {
            if (hit->entering) {
                stack.push_back(prim.interior_medium);
            } else {
                auto it = std::find(stack.rbegin(), stack.rend(), prim.interior_medium);
                if (it != stack.rend()) stack.erase(std::next(it).base());
            }
        }
        t_prev = hit->t;
        t = hit->t + kShadowEpsilon;
    }
    if (!stack.empty()) {
        optical_depth +=
            media[static_cast<std::size_t>(stack.back())].sigma_t(lambda) * (dist - t_prev);
    }
    return std::exp(-optical_depth);
}

std::vector<int> Scene::media_at(const Vec3& p) const {
    std::vector<int> out;
    for (const auto& prim : primitives) {
        if (prim.interior_medium >= 0 && shape_contains(prim.shape, p)) {
            out.push_back(prim.interior_medium);
        }
    }
    return out;
}

} // namespace fluor
