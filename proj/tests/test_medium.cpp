// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "fluor/medium.hpp"
#include "fluor/phase.hpp"
#include "fluor/rng.hpp"
#include "stat_utils.hpp"

using namespace fluor;
using namespace fluor::testing;

namespace {

const char* kDataDir = FLUOR_DATA_DIR;

Medium scattering_medium(double sigma_s, double sigma_a = 0.0, double g = 0.0) {
    auto grid = WavelengthGrid::standard();
    return Medium(SpectralDistribution::constant(grid, sigma_a),
                  SpectralDistribution::constant(grid, sigma_s), g, {}, grid);
}

Medium dye_medium(double sigma_s, double concentration, const char* name = "alexa_fluor_488") {
    auto grid = WavelengthGrid::standard();
    DissolvedFluorophore d{load_fluorophore(kDataDir, name), concentration};
    return Medium(SpectralDistribution(grid), SpectralDistribution::constant(grid, sigma_s), 0.0,
                  {d}, grid);
}

} // namespace

TEST_CASE("transmittance basics") {
    auto vacuum = scattering_medium(0.0);
    CHECK(vacuum.transmittance({0, 0, 0}, {0, 0, 5}, 500.0) == 1.0);

    auto m = scattering_medium(1.0);
    CHECK(m.transmittance({0, 0, 0}, {0, 0, std::log(2.0)}, 500.0) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.transmittance({1, 2, 3}, {1, 2, 3}, 500.0) == 1.0);
}

TEST_CASE("transmittance is multiplicative over collinear splits") {
    Rng rng(3, 1);
    for (int i = 0; i < 50; ++i) {
        auto m = scattering_medium(5.0 * rng.next_double(), 2.0 * rng.next_double());
        Vec3 a{rng.next_double(), rng.next_double(), rng.next_double()};
        Vec3 dir = normalize({rng.next_double() - 0.5, rng.next_double() - 0.5,
                              rng.next_double() - 0.5});
        double len = 3.0 * rng.next_double();
        Vec3 c = a + dir * len;
        Vec3 b = a + dir * (len * rng.next_double());
        double whole = m.transmittance(a, c, 500.0);
        double split = m.transmittance(a, b, 500.0) * m.transmittance(b, c, 500.0);
        CHECK(whole == doctest::Approx(split).epsilon(1e-12));
    }
}

TEST_CASE("transmittance decreases in distance and concentration") {
    auto thin = dye_medium(0.1, 1e-4);
    auto dense = dye_medium(0.1, 1e-3);
    double lambda = 495.0; // inside the excitation support
    double prev = 1.0;
    for (double d : {0.1, 0.2, 0.4, 0.8}) {
        double tr = thin.transmittance({0, 0, 0}, {0, 0, d}, lambda);
        CHECK(tr < prev);
        prev = tr;
        CHECK(dense.transmittance({0, 0, 0}, {0, 0, d}, lambda) < tr);
    }
    // outside the excitation support the dye adds nothing
    CHECK(thin.transmittance({0, 0, 0}, {0, 0, 1}, 700.0) ==
          doctest::Approx(dense.transmittance({0, 0, 0}, {0, 0, 1}, 700.0)).epsilon(1e-12));
}

TEST_CASE("free flight sampling") {
    auto m = scattering_medium(2.0);
    CHECK(m.sample_free_flight(500.0, 0.0).distance == 0.0);
    auto s = m.sample_free_flight(500.0, 1.0 - std::exp(-2.0));
    CHECK(s.distance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.pdf == doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-12));

    auto vacuum = scattering_medium(0.0);
    CHECK_THROWS_AS(vacuum.sample_free_flight(500.0, 0.5), VacuumMediumError);
}

TEST_CASE("free flight mean matches 1/sigma_t over a million draws") {
    auto m = scattering_medium(1.0);
    Rng rng(99, 2);
    RunningStats stats;
    for (int i = 0; i < 1'000'000; ++i) {
        stats.add(m.sample_free_flight(500.0, rng.next_double()).distance);
    }
    CHECK(std::abs(stats.mean - 1.0) < 0.005);
}

TEST_CASE("event classification probabilities") {
    SUBCASE("pure scatterer always scatters") {
        auto m = scattering_medium(1.0, 0.0);
        Rng rng(1, 1);
        for (int i = 0; i < 1000; ++i) {
            CHECK(m.classify_event(500.0, rng.next_double()).type ==
                  MediumEventType::ElasticScatter);
        }
    }
    SUBCASE("emission probability is the coefficient ratio times the yield") {
        auto grid = WavelengthGrid::standard();
        Fluorophore dye;
        dye.name = "unit";
        dye.excitation = SpectralDistribution::constant(WavelengthGrid(400, 600, 1), 1.0);
        dye.emission = SpectralDistribution::constant(WavelengthGrid(500, 600, 1), 1.0);
        dye.emission_integral = integrate(dye.emission);
        dye.epsilon_max = 100.0;
        dye.molecular_weight = 100.0;

        SUBCASE("Q = 1 and sigma_s == sigma_af splits 50/50") {
            dye.quantum_yield = 1.0;
            DissolvedFluorophore d{dye, 1.0};
            double sigma_af = fluor_absorption_coefficient(d, 500.0);
            REQUIRE(sigma_af > 0.0);
            Medium m(SpectralDistribution(grid),
                     SpectralDistribution::constant(grid, sigma_af), 0.0, {d}, grid);
            CHECK(m.classify_event(500.0, 0.49).type == MediumEventType::ElasticScatter);
            auto e = m.classify_event(500.0, 0.51);
            CHECK(e.type == MediumEventType::FluorescentEmission);
            CHECK(e.fluorophore == 0);
            CHECK(m.classify_event(500.0, 0.999999).type ==
                  MediumEventType::FluorescentEmission);
        }
        SUBCASE("Q = 0 never emits") {
            dye.quantum_yield = 0.0;
            DissolvedFluorophore d{dye, 100.0};
            double sigma_af = fluor_absorption_coefficient(d, 500.0);
            Medium m(SpectralDistribution(grid),
                     SpectralDistribution::constant(grid, sigma_af), 0.0, {d}, grid);
            Rng rng(5, 5);
            for (int i = 0; i < 2000; ++i) {
                CHECK(m.classify_event(500.0, rng.next_double()).type !=
                      MediumEventType::FluorescentEmission);
            }
        }
    }
}

TEST_CASE("classification frequencies track the analytic split") {
    Rng seed_rng(17, 3);
    for (int scene = 0; scene < 5; ++scene) {
        double sigma_s = 0.2 + 2.0 * seed_rng.next_double();
        double conc = 1e-4 + 3e-4 * seed_rng.next_double();
        auto m = dye_medium(sigma_s, conc);
        double lambda = 480.0 + 30.0 * seed_rng.next_double();

        double st = m.sigma_t(lambda);
        const auto& d = m.fluorophores()[0];
        double p_elastic = m.sigma_s_bg(lambda) / st;
        double p_emit = fluor_absorption_coefficient(d, lambda) / st * d.dye.quantum_yield;

        const int n = 1'000'000;
        long elastic = 0, emit = 0, absorbed = 0;
        Rng rng(static_cast<std::uint64_t>(scene), 77);
        for (int i = 0; i < n; ++i) {
            switch (m.classify_event(lambda, rng.next_double()).type) {
                case MediumEventType::ElasticScatter: ++elastic; break;
                case MediumEventType::FluorescentEmission: ++emit; break;
                case MediumEventType::Absorbed: ++absorbed; break;
            }
        }
        auto within3 = [&](long count, double p) {
            double sigma = std::sqrt(p * (1.0 - p) * n);
            return std::abs(count - p * n) <= 3.0 * sigma + 1.0;
        };
        INFO("scene ", scene, " lambda ", lambda);
        CHECK(within3(elastic, p_elastic));
        CHECK(within3(emit, p_emit));
        CHECK(within3(absorbed, 1.0 - p_elastic - p_emit));
    }
}

TEST_CASE("probabilities sum to one") {
    auto m = dye_medium(0.5, 2e-4);
    for (double lambda : {450.0, 495.0, 519.0, 560.0}) {
        double st = m.sigma_t(lambda);
        const auto& d = m.fluorophores()[0];
        double sum = m.sigma_s_bg(lambda) / st +
                     fluor_absorption_coefficient(d, lambda) / st * d.dye.quantum_yield +
                     (m.sigma_a_bg(lambda) +
                      fluor_absorption_coefficient(d, lambda) * (1.0 - d.dye.quantum_yield)) /
                         st;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("Henyey-Greenstein density") {
    SUBCASE("isotropic constant") {
        for (double c : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
            CHECK(phase_eval(0.0, c) == doctest::Approx(1.0 / (4.0 * kPi)).epsilon(1e-12));
        }
        CHECK(phase_eval(0.0, 0.5) == doctest::Approx(0.0795775).epsilon(1e-6));
    }
    SUBCASE("normalizes over the sphere (quadrature oracle)") {
        for (double g : {-0.6, 0.0, 0.5, 0.9}) {
            double integral =
                2.0 * kPi * simpson(-1.0, 1.0, 4096, [&](double c) { return phase_eval(g, c); });
            CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
        }
    }
    SUBCASE("sampled pdf equals the density at the sampled direction") {
        Rng rng(4, 4);
        Vec3 w = normalize({0.3, -0.2, 0.9});
        for (double g : {0.0, 0.5, -0.4}) {
            for (int i = 0; i < 200; ++i) {
                auto s = phase_sample(g, w, rng.next_double(), rng.next_double());
                CHECK(s.pdf ==
                      doctest::Approx(phase_eval(g, dot(w, s.dir))).epsilon(1e-9));
                CHECK(length(s.dir) == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("HG sampling histogram matches the density (chi-square)") {
    const double g = 0.7;
    const int n = 100'000;
    const int bins = 64;
    Vec3 w{0.0, 0.0, 1.0};
    std::vector<double> observed(bins, 0.0);
    Rng rng(31, 8);
    for (int i = 0; i < n; ++i) {
        auto s = phase_sample(g, w, rng.next_double(), rng.next_double());
        double c = std::clamp(dot(w, s.dir), -1.0, 1.0);
        auto bin = std::min(static_cast<int>((c + 1.0) * 0.5 * bins), bins - 1);
        observed[static_cast<std::size_t>(bin)] += 1.0;
    }
    std::vector<double> expected(bins, 0.0);
    for (int b = 0; b < bins; ++b) {
        double c0 = -1.0 + 2.0 * b / bins;
        double c1 = -1.0 + 2.0 * (b + 1) / bins;
        expected[static_cast<std::size_t>(b)] =
            2.0 * kPi * simpson(c0, c1, 16, [&](double c) { return phase_eval(g, c); }) * n;
    }
    auto result = chi_square_test(observed, expected);
    INFO("chi2=", result.statistic, " crit=", result.critical);
    CHECK(result.pass);
}

TEST_CASE("conversion coefficient lives exactly on the emission band") {
    auto m = dye_medium(0.3, 2e-4);
    const auto& dye = m.fluorophores()[0].dye;
    CHECK(m.sigma_conversion(dye.emission_peak()) > 0.0);
    CHECK(m.sigma_conversion(460.0) == 0.0); // below the emission support
    CHECK(m.sigma_conversion(700.0) == 0.0); // beyond it
    // scales with the peak Beer-Lambert coefficient and the quantum yield
    auto m2 = dye_medium(0.3, 4e-4);
    CHECK(m2.sigma_conversion(dye.emission_peak()) ==
          doctest::Approx(2.0 * m.sigma_conversion(dye.emission_peak())).epsilon(1e-12));
}
