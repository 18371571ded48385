// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "fluor/integrator.hpp"
#include "fluor/phase.hpp"
#include "fluor/scene.hpp"

using namespace fluor;

namespace {

const Scene& bead_scene() {
    static const Scene scene = [] {
        Scene s = load_scene_file(std::filesystem::path(FLUOR_SCENES_DIR) /
                                  "validation_bead_488.json");
        return s;
    }();
    return scene;
}

void BM_PhaseSample(benchmark::State& state) {
    double g = 0.6;
    Rng rng(3, 4);
    Vec3 dir{0, 0, 1};
    for (auto _ : state) {
        auto s = phase_sample(g, dir, rng.next_double(), rng.next_double());
        dir = s.dir;
        benchmark::DoNotOptimize(s.pdf);
    }
}
BENCHMARK(BM_PhaseSample);

void BM_TracePathEmissionBand(benchmark::State& state) {
    RenderConfig config = RenderConfig::from_scene(bead_scene());
    std::uint64_t i = 0;
    for (auto _ : state) {
        Rng rng = make_stream(1, i & 4095, i, 219);
        benchmark::DoNotOptimize(trace_path(bead_scene(), 32, 32, 519.0, rng, config));
        ++i;
    }
}
BENCHMARK(BM_TracePathEmissionBand);

void BM_TracePathOffBand(benchmark::State& state) {
    RenderConfig config = RenderConfig::from_scene(bead_scene());
    std::uint64_t i = 0;
    for (auto _ : state) {
        Rng rng = make_stream(1, i & 4095, i, 100);
        benchmark::DoNotOptimize(trace_path(bead_scene(), 32, 32, 400.0, rng, config));
        ++i;
    }
}
BENCHMARK(BM_TracePathOffBand);

void BM_RenderTinyFilm(benchmark::State& state) {
    Scene scene = bead_scene();
    scene.camera.width = 8;
    scene.camera.height = 8;
    scene.finalize();
    RenderConfig config = RenderConfig::from_scene(scene);
    config.spp = 2;
    config.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(render(scene, config));
    }
}
BENCHMARK(BM_RenderTinyFilm)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
