// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "fluor/spectral.hpp"

namespace fluor {

/// Rectangular pixel region, inclusive lower bound, exclusive upper.
struct PixelRegion {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

/// Per-pixel spectral accumulator. Bins hold running sums in float; the
/// per-pixel sample count turns them into means.
class Film {
public:
    Film() = default;
    Film(int width, int height, const WavelengthGrid& grid);

    int width() const { return width_; }
    int height() const { return height_; }
    const WavelengthGrid& grid() const { return grid_; }

    /// Accumulate one sample value at (pixel, wavelength index).
    void add_sample(int x, int y, std::size_t lambda_index, double value);

    /// Record how many samples each pixel received (uniform after a render).
    void set_sample_count(std::uint32_t spp);
    std::uint32_t sample_count(int x, int y) const;

    float bin(int x, int y, std::size_t lambda_index) const;

    /// Mean SPD of one pixel.
    SpectralDistribution pixel_spd(int x, int y) const;

    /// Average SPD over pixels whose total energy exceeds `threshold`
    /// ("illuminated" pixels), optionally restricted to a region.
    SpectralDistribution scene_spd(double threshold = 0.0,
                                   std::optional<PixelRegion> region = std::nullopt) const;

    /// Pairwise sum of another film's bins and counts (tile reduction).
    void merge(const Film& other);

    /// PNG + scene-SPD CSV + raw spectral dump (`.flspd`).
    void write_outputs(const std::filesystem::path& basename) const;

    void write_png(const std::filesystem::path& path) const;
    void write_spd_csv(const std::filesystem::path& path) const;
    void write_raw(const std::filesystem::path& path) const;
    static Film read_raw(const std::filesystem::path& path);

    bool operator==(const Film& o) const;

private:
    int width_ = 0;
    int height_ = 0;
    WavelengthGrid grid_;
    std::vector<float> bins_;          // [pixel][lambda], row-major pixels
    std::vector<std::uint32_t> counts_; // per pixel

    std::size_t pixel_index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }
};

} // namespace fluor
