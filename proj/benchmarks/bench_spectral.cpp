// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "fluor/fluorophore.hpp"
#include "fluor/rng.hpp"
#include "fluor/spectral.hpp"

using namespace fluor;

namespace {

const Fluorophore& dye488() {
    static const Fluorophore f = load_fluorophore(FLUOR_DATA_DIR, "alexa_fluor_488");
    return f;
}

void BM_SpectralLookup(benchmark::State& state) {
    const auto& em = dye488().emission;
    double lambda = 476.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(em.value(lambda));
        lambda += 0.37;
        if (lambda > 627.0) lambda = 476.0;
    }
}
BENCHMARK(BM_SpectralLookup);

void BM_Resample(benchmark::State& state) {
    auto grid = WavelengthGrid(300, 800, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(resample(dye488().emission, grid));
    }
}
BENCHMARK(BM_Resample);

void BM_SamplerBuild(benchmark::State& state) {
    auto pdf = normalize_pdf(dye488().emission);
    for (auto _ : state) {
        SpectralSampler sampler(pdf);
        benchmark::DoNotOptimize(sampler);
    }
}
BENCHMARK(BM_SamplerBuild);

void BM_WavelengthSample(benchmark::State& state) {
    auto pdf = normalize_pdf(dye488().emission);
    SpectralSampler sampler(pdf);
    Rng rng(1, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.sample(rng.next_double()));
    }
}
BENCHMARK(BM_WavelengthSample);

} // namespace

BENCHMARK_MAIN();
