// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "fluor/errors.hpp"
#include "fluor/integrator.hpp"
#include "fluor/scene.hpp"
#include "fluor/validation.hpp"

namespace {

using namespace fluor;

std::string resolve_dye_name(const std::string& arg) {
    if (arg.rfind("alexa", 0) == 0) return arg;
    return "alexa_fluor_" + arg; // accept the short numeric form
}

int run_render(const std::string& scene_path, int spp, const std::string& out,
               std::uint64_t seed, bool seed_set, int threads, bool elastic) {
    Scene scene = load_scene_file(scene_path);
    RenderConfig config = RenderConfig::from_scene(scene);
    if (spp > 0) config.spp = spp;
    if (seed_set) config.seed = seed;
    config.threads = threads;
    if (elastic) config.elastic_component = true;

    auto t0 = std::chrono::steady_clock::now();
    Film film = render(scene, config);
    auto t1 = std::chrono::steady_clock::now();
    double seconds = std::chrono::duration<double>(t1 - t0).count();

    film.write_outputs(out);
    // traced paths: active wavelengths x pixels x spp; report the upper bound
    double paths = static_cast<double>(scene.camera.width) * scene.camera.height *
                   static_cast<double>(config.grid.count()) * config.spp;
    std::printf("rendered %dx%d, %d spp, %zu wavelengths in %.2f s (%.2f Mpaths/s)\n",
                scene.camera.width, scene.camera.height, config.spp, config.grid.count(),
                seconds, paths / seconds / 1e6);
    std::printf("wrote %s.png %s.spd.csv %s.flspd\n", out.c_str(), out.c_str(), out.c_str());
    return 0;
}

int run_validate(const std::string& dye_arg, const std::string& test, int spp,
                 const std::string& scenes_dir, const std::string& report_path, int threads) {
    std::string dye_name = resolve_dye_name(dye_arg);
    std::string short_name = dye_arg.rfind("alexa_fluor_", 0) == 0
                                 ? dye_arg.substr(std::string("alexa_fluor_").size())
                                 : dye_arg;
    std::string scene_path = scenes_dir + "/validation_bead_" + short_name + ".json";
    Scene scene = load_scene_file(scene_path);

    const char* db_env = std::getenv("FLUOR_DB");
    FluorophoreDatabase db(db_env != nullptr ? db_env : "data/fluorophores");
    const Fluorophore& dye = db.get(dye_name);

    RenderConfig config = RenderConfig::from_scene(scene);
    if (spp > 0) config.spp = spp;
    config.threads = threads;

    bool all_pass = true;
    if (test == "profile" || test == "all") {
        ValidationReport report = profile_test(scene, dye, config);
        print_report(report);
        if (!report_path.empty()) write_report(report, report_path);
        all_pass = all_pass && report.pass;
    }
    if (test == "scaling" || test == "all") {
        // probe the excitation band at ~50%, ~75% and the peak
        std::vector<double> lambdas;
        double peak = dye.excitation_peak();
        for (double frac : {0.5, 0.75}) {
            for (double l = peak; l >= scene.grid.lambda_min; l -= 1.0) {
                if (dye.excitation.value(l) < frac) {
                    lambdas.push_back(l + 1.0);
                    break;
                }
            }
        }
        ValidationReport report = scaling_test(scene, dye, lambdas, config);
        print_report(report);
        if (!report_path.empty()) {
            write_report(report, report_path.empty() ? "scaling.csv" : report_path);
        }
        all_pass = all_pass && report.pass;
    }
    return all_pass ? 0 : 1;
}

int run_spectra(const std::string& dye_arg, const std::string& csv_out) {
    const char* db_env = std::getenv("FLUOR_DB");
    FluorophoreDatabase db(db_env != nullptr ? db_env : "data/fluorophores");
    const Fluorophore& dye = db.get(resolve_dye_name(dye_arg));
    std::printf("%s\n", dye.name.c_str());
    std::printf("  excitation peak: %.0f nm\n", dye.excitation_peak());
    std::printf("  emission peak:   %.0f nm\n", dye.emission_peak());
    std::printf("  epsilon_max:     %.0f L/(mol cm)\n", dye.epsilon_max);
    std::printf("  quantum yield:   %.2f\n", dye.quantum_yield);
    std::printf("  molecular mass:  %.1f g/mol\n", dye.molecular_weight);
    if (!csv_out.empty()) {
        std::FILE* f = std::fopen(csv_out.c_str(), "w");
        if (f == nullptr) throw IoError("cannot write " + csv_out);
        std::fprintf(f, "wavelength_nm,excitation,emission\n");
        const auto& g = dye.excitation.grid();
        for (std::size_t i = 0; i < g.count(); ++i) {
            std::fprintf(f, "%.0f,%.6f,%.6f\n", g.wavelength(i), dye.excitation[i],
                         dye.emission[i]);
        }
        std::fclose(f);
        std::printf("wrote %s\n", csv_out.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fluor: spectral path tracer for fluorescent participating media"};
    app.require_subcommand(1);

    auto* render_cmd = app.add_subcommand("render", "render a scene file");
    std::string scene_path, out = "out";
    int spp = 0, threads = 0;
    std::uint64_t seed = 0;
    bool elastic = false;
    render_cmd->add_option("scene", scene_path, "scene JSON file")->required();
    render_cmd->add_option("--spp", spp, "samples per pixel per wavelength");
    render_cmd->add_option("--out", out, "output basename");
    auto* seed_opt = render_cmd->add_option("--seed", seed, "RNG seed");
    render_cmd->add_option("--threads", threads, "worker threads (0 = all)");
    render_cmd->add_flag("--elastic", elastic, "include elastic transport of the light SPD");

    auto* validate_cmd = app.add_subcommand("validate", "run the spectroscopic validation");
    std::string dye_arg, test = "all", scenes_dir = "scenes", report_path;
    int vspp = 0, vthreads = 0;
    validate_cmd->add_option("dye", dye_arg, "dye name or number, e.g. 488")->required();
    validate_cmd->add_option("--test", test, "profile|scaling|all")
        ->check(CLI::IsMember({"profile", "scaling", "all"}));
    validate_cmd->add_option("--spp", vspp, "samples per pixel per wavelength");
    validate_cmd->add_option("--scenes", scenes_dir, "scene directory");
    validate_cmd->add_option("--report", report_path, "report CSV path");
    validate_cmd->add_option("--threads", vthreads, "worker threads (0 = all)");

    auto* spectra_cmd = app.add_subcommand("spectra", "inspect a bundled dye");
    std::string sp_dye, sp_csv;
    spectra_cmd->add_option("dye", sp_dye, "dye name or number")->required();
    spectra_cmd->add_option("--csv", sp_csv, "export resampled spectra");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*render_cmd) {
            return run_render(scene_path, spp, out, seed, seed_opt->count() > 0, threads,
                              elastic);
        }
        if (*validate_cmd) {
            return run_validate(dye_arg, test, vspp, scenes_dir, report_path, vthreads);
        }
        if (*spectra_cmd) {
            return run_spectra(sp_dye, sp_csv);
        }
    } catch (const IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const MissingFileError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
