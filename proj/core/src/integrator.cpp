// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "fluor/phase.hpp"

namespace fluor {

RenderConfig RenderConfig::from_scene(const Scene& scene) {
    RenderConfig c;
    c.spp = scene.defaults.spp;
    c.max_bounces = scene.defaults.max_bounces;
    c.seed = scene.defaults.seed;
    c.grid = scene.grid;
    c.elastic_component = scene.defaults.elastic;
    return c;
}

namespace {

struct MediumStack {
    int items[8];
    int count = 0;

    void push(int m) {
        if (count < 8) items[count] = m;
        ++count; // overflow slots are dropped on push, matched on pop
    }
    void pop(int m) {
        if (count > 8) {
            --count;
            return;
        }
        for (int i = count - 1; i >= 0; --i) {
            if (items[i] == m) {
                for (int j = i; j + 1 < count; ++j) items[j] = items[j + 1];
                --count;
                return;
            }
        }
    }
    int top() const { return count > 0 && count <= 8 ? items[count - 1] : -1; }
};

void track_deviation(PathAudit* audit, double explicit_ratio, double reduced) {
    if (audit == nullptr) return;
    double dev = reduced != 0.0 ? std::abs(explicit_ratio / reduced - 1.0)
                                : std::abs(explicit_ratio);
    if (dev > audit->max_weight_deviation) audit->max_weight_deviation = dev;
}

Vec3 sample_cosine_hemisphere(const Vec3& n, double u1, double u2, double* cos_theta) {
    double r = std::sqrt(u1);
    double phi = 2.0 * kPi * u2;
    double z = std::sqrt(std::max(0.0, 1.0 - u1));
    Frame frame(n);
    *cos_theta = z;
    return frame.to_world({r * std::cos(phi), r * std::sin(phi), z});
}

Vec3 reflect(const Vec3& d, const Vec3& n) { return d - n * (2.0 * dot(d, n)); }

double fresnel_dielectric(double cos_i, double eta_i, double eta_t) {
    cos_i = std::clamp(cos_i, 0.0, 1.0);
    double sin_t2 = (eta_i / eta_t) * (eta_i / eta_t) * (1.0 - cos_i * cos_i);
    if (sin_t2 >= 1.0) return 1.0; // total internal reflection
    double cos_t = std::sqrt(1.0 - sin_t2);
    double rs = (eta_i * cos_i - eta_t * cos_t) / (eta_i * cos_i + eta_t * cos_t);
    double rp = (eta_t * cos_i - eta_i * cos_t) / (eta_t * cos_i + eta_i * cos_t);
    return 0.5 * (rs * rs + rp * rp);
}

/// Next-event estimation at a conversion vertex: one light point and one
/// excitation wavelength, connected through the participating media at the
/// excitation wavelength. The vertex re-radiates isotropically, hence the
/// 1/(4 pi); the uniform-area pdf is converted with the emitter cosine over
/// the squared distance.
double emission_nee(const Scene& scene, int medium_index, int dye, const Vec3& vertex,
                    Rng& rng) {
    if (scene.lights.empty()) return 0.0;
    auto n_lights = scene.lights.size();
    auto light_index = std::min(static_cast<std::size_t>(rng.next_double() * n_lights),
                                n_lights - 1);
    const Light& light = scene.lights[light_index];

    const ExcitationSampler& exc = scene.excitation_sampler(static_cast<int>(light_index),
                                                            medium_index, dye);
    if (!exc.sampler) return 0.0; // light cannot excite this dye

    WavelengthSample wl = exc.sampler->sample(rng.next_double());
    if (wl.pdf <= 0.0) return 0.0;
    const Medium& medium = scene.media[static_cast<std::size_t>(medium_index)];
    const Fluorophore& f = medium.fluorophores()[static_cast<std::size_t>(dye)].dye;
    double spectral = light.spd.value(wl.lambda) * f.excitation.value(wl.lambda) / wl.pdf;
    if (spectral <= 0.0) return 0.0;

    SurfaceSample sp = sample_shape_surface(light.shape, rng.next_double(), rng.next_double());
    Vec3 delta = sp.point - vertex;
    double dist2 = length_squared(delta);
    if (dist2 == 0.0) return 0.0;
    double dist = std::sqrt(dist2);
    Vec3 to_vertex = delta / -dist;
    double cos_l = dot(sp.normal, to_vertex);
    if (light.two_sided) {
        cos_l = std::abs(cos_l);
    } else if (cos_l <= 0.0) {
        return 0.0;
    }

    double visibility = scene.attenuated_visibility(vertex, sp.point, wl.lambda);
    if (visibility <= 0.0) return 0.0;

    double n_lights_d = static_cast<double>(n_lights);
    return kInv4Pi * spectral * visibility * cos_l * light.area * n_lights_d / dist2;
}

} // namespace

double trace_path(const Scene& scene, int px, int py, double lambda, Rng& rng,
                  const RenderConfig& config, PathAudit* audit) {
    if (audit != nullptr) ++audit->paths;

    PathState path;
    Ray ray = scene.camera.generate_ray(px, py, rng.next_double(), rng.next_double());
    path.position = ray.origin;
    path.direction = ray.dir;
    path.lambda = lambda;

    MediumStack stack;
    for (int m : scene.camera_media()) stack.push(m);

    double result = 0.0;
    // hard cap on boundary iterations, independent of the bounce budget
    int guard = 4 * config.max_bounces + 64;

    while (path.alive && guard-- > 0) {
        const Medium* medium =
            stack.top() >= 0 ? &scene.media[static_cast<std::size_t>(stack.top())] : nullptr;

        double sigma_t = 0.0, sigma_conv = 0.0, sigma_ext = 0.0;
        double t_flight = 1e300;
        if (medium != nullptr) {
            sigma_t = medium->sigma_t(lambda);
            sigma_conv = medium->sigma_conversion(lambda);
            sigma_ext = sigma_t + sigma_conv;
            if (sigma_ext > 0.0) {
                t_flight = -std::log(1.0 - rng.next_double()) / sigma_ext;
            }
        }

        auto hit = scene.intersect(ray);
        double t_surface = hit ? hit->t : 1e300;

        if (t_flight < t_surface) {
            // volume collision; restore the physical transmittance that the
            // extended collision rate over-attenuated
            path.throughput *= std::exp(sigma_conv * t_flight);
            path.position = ray.at(t_flight);
            if (++path.bounces > config.max_bounces) break;

            double u = rng.next_double() * sigma_ext;
            if (u < sigma_conv) {
                // inelastic conversion vertex
                ++path.inelastic_events;
                if (path.inelastic_events > 1) {
                    if (audit != nullptr) ++audit->secondary_inelastic_kills;
                    break;
                }
                if (audit != nullptr) ++audit->conversion_events;
                // pick the dye proportional to its conversion coefficient
                int dye = 0;
                double acc = medium->sigma_conversion(0, lambda);
                int n_dyes = static_cast<int>(medium->fluorophores().size());
                while (u > acc && dye + 1 < n_dyes) {
                    ++dye;
                    acc += medium->sigma_conversion(dye, lambda);
                }
                result += path.throughput *
                          emission_nee(scene, stack.top(), dye, path.position, rng);
                if (!config.continue_after_emission) break;
                // study mode: emission is isotropic, keep walking at lambda
                PhaseSample iso = phase_sample(0.0, ray.dir, rng.next_double(),
                                               rng.next_double());
                ray = {path.position, iso.dir};
                continue;
            }

            // physical channels follow the medium's event split
            double u_phys = (u - sigma_conv) / sigma_t;
            MediumEvent event = medium->classify_event(lambda, u_phys);
            if (event.type == MediumEventType::ElasticScatter) {
                if (audit != nullptr) ++audit->elastic_events;
                PhaseSample ps = phase_sample(medium->phase_g(), ray.dir, rng.next_double(),
                                              rng.next_double());
                // estimator ratio (F G Vhat)/(p(w) p(t) P(elastic)); analog
                // sampling reduces it to the conversion compensation alone
                if (audit != nullptr) {
                    double p_elastic = medium->sigma_s_bg(lambda) / sigma_ext;
                    double explicit_ratio =
                        medium->sigma_s_bg(lambda) * ps.pdf * std::exp(-sigma_t * t_flight) /
                        (sigma_ext * std::exp(-sigma_ext * t_flight) * p_elastic * ps.pdf);
                    track_deviation(audit, explicit_ratio, std::exp(sigma_conv * t_flight));
                }
                ray = {path.position, ps.dir};
                continue;
            }
            if (event.type == MediumEventType::FluorescentEmission) {
                // a wavelength-shifting interaction of the carried photon:
                // cascaded emission is outside the transport model
                ++path.inelastic_events;
                if (audit != nullptr) ++audit->secondary_inelastic_kills;
                break;
            }
            if (audit != nullptr) ++audit->absorbed;
            break;
        }

        if (!hit) break; // escaped the scene

        if (medium != nullptr && sigma_conv > 0.0) {
            path.throughput *= std::exp(sigma_conv * t_surface);
        }
        path.position = hit->point;

        if (hit->light >= 0) {
            if (config.elastic_component && path.inelastic_events == 0) {
                const Light& light = scene.lights[static_cast<std::size_t>(hit->light)];
                if (hit->entering || light.two_sided) {
                    result += path.throughput * light.spd.value(lambda);
                }
            }
            break; // emitter surfaces terminate the walk
        }

        const Material& mat = *hit->material;
        if (const auto* lam = std::get_if<Lambertian>(&mat)) {
            if (++path.bounces > config.max_bounces) break;
            double rho = lam->reflectance.value(lambda);
            if (rho <= 0.0) break;
            double cos_theta = 0.0;
            Vec3 dir = sample_cosine_hemisphere(hit->normal, rng.next_double(),
                                                rng.next_double(), &cos_theta);
            if (audit != nullptr && cos_theta > 0.0) {
                double explicit_ratio = (rho / kPi) * cos_theta / (cos_theta / kPi);
                track_deviation(audit, explicit_ratio, rho);
            }
            path.throughput *= rho;
            ray = {path.position, dir};
            continue;
        }
        if (const auto* glossy = std::get_if<GlossyPhong>(&mat)) {
            if (++path.bounces > config.max_bounces) break;
            double rho = glossy->reflectance.value(lambda);
            if (rho <= 0.0) break;
            Vec3 mirror = reflect(ray.dir, hit->normal);
            double n = glossy->exponent;
            Vec3 dir;
            bool ok = false;
            for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
                double cos_alpha = std::pow(rng.next_double(), 1.0 / (n + 1.0));
                double sin_alpha = std::sqrt(std::max(0.0, 1.0 - cos_alpha * cos_alpha));
                double phi = 2.0 * kPi * rng.next_double();
                Frame frame(mirror);
                dir = frame.to_world(
                    {sin_alpha * std::cos(phi), sin_alpha * std::sin(phi), cos_alpha});
                ok = dot(dir, hit->normal) > 0.0;
            }
            if (!ok) break; // lobe fell below the horizon twice
            double cos_out = dot(dir, hit->normal);
            path.throughput *= rho * (n + 2.0) / (n + 1.0) * cos_out;
            ray = {path.position, dir};
            continue;
        }

        // dielectric boundary
        const auto& die = std::get<SmoothDielectric>(mat);
        const Primitive& prim = scene.primitives[static_cast<std::size_t>(hit->primitive)];
        bool passes = true;
        Vec3 out_dir = ray.dir;
        if (die.refract) {
            double eta_i = 1.0, eta_t = die.ior;
            if (!hit->entering) std::swap(eta_i, eta_t);
            double cos_i = -dot(ray.dir, hit->normal);
            double fr = fresnel_dielectric(cos_i, eta_i, eta_t);
            if (rng.next_double() < fr) {
                passes = false;
                out_dir = reflect(ray.dir, hit->normal);
            } else {
                double eta = eta_i / eta_t;
                double sin_t2 = eta * eta * (1.0 - cos_i * cos_i);
                double cos_t = std::sqrt(std::max(0.0, 1.0 - sin_t2));
                out_dir = normalize(ray.dir * eta + hit->normal * (eta * cos_i - cos_t));
            }
        }
        if (passes && prim.interior_medium >= 0) {
            if (hit->entering) {
                stack.push(prim.interior_medium);
            } else {
                stack.pop(prim.interior_medium);
            }
        }
        ray = {path.position, out_dir};
    }

    if (audit != nullptr && result > 0.0) {
        ++audit->contributing_paths;
        if (path.inelastic_events == 1) ++audit->contributing_with_one_inelastic;
    }
    return result;
}

Film render(const Scene& scene, const RenderConfig& config) {
    Film film(scene.camera.width, scene.camera.height, config.grid);

    // wavelengths that can never contribute carry no paths (their bins are
    // exactly zero either way)
    std::vector<char> active(config.grid.count(), config.elastic_component ? 1 : 0);
    if (!config.elastic_component) {
        for (std::size_t i = 0; i < config.grid.count(); ++i) {
            double lambda = config.grid.wavelength(i);
            for (const auto& medium : scene.media) {
                if (medium.sigma_conversion(lambda) > 0.0) {
                    active[i] = 1;
                    break;
                }
            }
        }
    }

    constexpr int kTile = 16;
    int tiles_x = (scene.camera.width + kTile - 1) / kTile;
    int tiles_y = (scene.camera.height + kTile - 1) / kTile;
    std::atomic<int> next_tile{0};

    auto worker = [&] {
        for (;;) {
            int tile = next_tile.fetch_add(1);
            if (tile >= tiles_x * tiles_y) return;
            int x0 = (tile % tiles_x) * kTile;
            int y0 = (tile / tiles_x) * kTile;
            int x1 = std::min(x0 + kTile, scene.camera.width);
            int y1 = std::min(y0 + kTile, scene.camera.height);
            for (int y = y0; y < y1; ++y) {
                for (int x = x0; x < x1; ++x) {
                    std::uint64_t pixel_index =
                        static_cast<std::uint64_t>(y) * scene.camera.width + x;
                    for (std::size_t li = 0; li < config.grid.count(); ++li) {
                        if (!active[li]) continue;
                        double lambda = config.grid.wavelength(li);
                        for (int s = 0; s < config.spp; ++s) {
                            Rng rng = make_stream(config.seed, pixel_index,
                                                  static_cast<std::uint64_t>(s), li);
                            double v = trace_path(scene, x, y, lambda, rng, config);
                            if (v != 0.0) film.add_sample(x, y, li, v);
                        }
                    }
                }
            }
        }
    };

    int n_threads = config.threads > 0
                        ? config.threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    film.set_sample_count(static_cast<std::uint32_t>(config.spp));
    return film;
}

} // namespace fluor
