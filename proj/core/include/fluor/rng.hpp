// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

namespace fluor {

// https://prng.di.unimi.it/splitmix64.c
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// PCG32 (O'Neill). One independent stream per (pixel, sample, wavelength)
/// keeps renders bit-identical for any scheduling of the work.
class Rng {
public:
    Rng() : Rng(0x853c49e6748fea9bULL, 0xda3e39cb94b95bdbULL) {}

    Rng(std::uint64_t state, std::uint64_t seq) {
        state_ = 0u;
        inc_ = (seq << 1u) | 1u;
        next_u32();
        state_ += state;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((~rot + 1u) & 31u));
    }

    /// Uniform double in [0, 1).
    double next_double() {
        return static_cast<double>(next_u32()) * 0x1p-32;
    }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

/// Deterministic per-sample stream derivation.
inline Rng make_stream(std::uint64_t seed, std::uint64_t pixel_index,
                       std::uint64_t sample_index, std::uint64_t lambda_index) {
    std::uint64_t a = splitmix64(seed ^ splitmix64(pixel_index));
    std::uint64_t b = splitmix64(a ^ splitmix64(sample_index * 0x9e3779b97f4a7c15ULL + lambda_index));
    return Rng(b, splitmix64(b));
}

} // namespace fluor
