// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "fluor/film.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "fluor/color.hpp"
#include "fluor/errors.hpp"
#include "png_io.hpp"

namespace fluor {

namespace {
constexpr char kRawMagic[] = "FLSPD v1\n";
}

Film::Film(int width, int height, const WavelengthGrid& grid)
    : width_(width), height_(height), grid_(grid) {
    bins_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * grid.count(),
                 0.0f);
    counts_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

void Film::add_sample(int x, int y, std::size_t lambda_index, double value) {
    bins_[pixel_index(x, y) * grid_.count() + lambda_index] += static_cast<float>(value);
}

void Film::set_sample_count(std::uint32_t spp) {
    std::fill(counts_.begin(), counts_.end(), spp);
}

std::uint32_t Film::sample_count(int x, int y) const { return counts_[pixel_index(x, y)]; }

float Film::bin(int x, int y, std::size_t lambda_index) const {
    return bins_[pixel_index(x, y) * grid_.count() + lambda_index];
}

SpectralDistribution Film::pixel_spd(int x, int y) const {
    std::vector<double> v(grid_.count(), 0.0);
    std::uint32_t n = counts_[pixel_index(x, y)];
    if (n > 0) {
        const float* row = &bins_[pixel_index(x, y) * grid_.count()];
        for (std::size_t i = 0; i < grid_.count(); ++i) {
            v[i] = static_cast<double>(row[i]) / static_cast<double>(n);
        }
    }
    return SpectralDistribution(grid_, std::move(v));
}

SpectralDistribution Film::scene_spd(double threshold, std::optional<PixelRegion> region) const {
    PixelRegion r = region.value_or(PixelRegion{0, 0, width_, height_});
    std::vector<double> sum(grid_.count(), 0.0);
    std::size_t lit = 0;
    for (int y = r.y0; y < r.y1; ++y) {
        for (int x = r.x0; x < r.x1; ++x) {
            std::uint32_t n = counts_[pixel_index(x, y)];
            if (n == 0) continue;
            const float* row = &bins_[pixel_index(x, y) * grid_.count()];
            double energy = 0.0;
            for (std::size_t i = 0; i < grid_.count(); ++i) {
                energy += static_cast<double>(row[i]);
            }
            if (energy <= threshold * static_cast<double>(n)) continue;
            ++lit;
            for (std::size_t i = 0; i < grid_.count(); ++i) {
                sum[i] += static_cast<double>(row[i]) / static_cast<double>(n);
            }
        }
    }
    if (lit == 0) {
        throw NoIlluminatedPixelsError("no pixel above the illumination threshold");
    }
    for (double& v : sum) v /= static_cast<double>(lit);
    return SpectralDistribution(grid_, std::move(sum));
}

void Film::merge(const Film& other) {
    if (other.width_ != width_ || other.height_ != height_ || !(other.grid_ == grid_)) {
        throw InvariantViolationError("cannot merge films of different layout");
    }
    for (std::size_t i = 0; i < bins_.size(); ++i) bins_[i] += other.bins_[i];
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

void Film::write_outputs(const std::filesystem::path& basename) const {
    write_png(basename.string() + ".png");
    write_spd_csv(basename.string() + ".spd.csv");
    write_raw(basename.string() + ".flspd");
}

void Film::write_png(const std::filesystem::path& path) const {
    // auto exposure: brightest pixel maps to luminance 1
    double max_y = 0.0;
    std::vector<Xyz> xyz(static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_));
    for (int y = 0; y < height_; ++y) {
        for (int x = 0; x < width_; ++x) {
            xyz[pixel_index(x, y)] = spd_to_xyz(pixel_spd(x, y));
            max_y = std::max(max_y, xyz[pixel_index(x, y)].y);
        }
    }
    double exposure = max_y > 0.0 ? 1.0 / max_y : 1.0;
    std::vector<std::uint8_t> rgb8(xyz.size() * 3);
    for (std::size_t i = 0; i < xyz.size(); ++i) {
        Rgb lin = xyz_to_srgb_linear(xyz[i]);
        auto encode = [&](double v) {
            double g = std::pow(std::clamp(v * exposure, 0.0, 1.0), 1.0 / 2.2);
            return static_cast<std::uint8_t>(std::lround(g * 255.0));
        };
        rgb8[i * 3 + 0] = encode(lin.r);
        rgb8[i * 3 + 1] = encode(lin.g);
        rgb8[i * 3 + 2] = encode(lin.b);
    }
    write_png_rgb8(path, width_, height_, rgb8.data());
}

void Film::write_spd_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "wavelength_nm,value\n";
    SpectralDistribution spd(grid_);
    try {
        spd = scene_spd();
    } catch (const NoIlluminatedPixelsError&) {
        // all-dark film: emit zeros
    }
    for (std::size_t i = 0; i < grid_.count(); ++i) {
        out << grid_.wavelength(i) << "," << spd[i] << "\n";
    }
}

void Film::write_raw(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(kRawMagic, sizeof(kRawMagic) - 1);
    auto put_u32 = [&](std::uint32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16),
                              static_cast<unsigned char>(v >> 24)};
        out.write(reinterpret_cast<const char*>(b), 4);
    };
    auto put_f64 = [&](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
        out.write(reinterpret_cast<const char*>(b), 8);
    };
    put_u32(static_cast<std::uint32_t>(width_));
    put_u32(static_cast<std::uint32_t>(height_));
    put_f64(grid_.lambda_min);
    put_f64(grid_.lambda_max);
    put_f64(grid_.step);
    put_u32(static_cast<std::uint32_t>(grid_.count()));
    static_assert(sizeof(float) == 4);
    out.write(reinterpret_cast<const char*>(bins_.data()),
              static_cast<std::streamsize>(bins_.size() * sizeof(float)));
    out.write(reinterpret_cast<const char*>(counts_.data()),
              static_cast<std::streamsize>(counts_.size() * sizeof(std::uint32_t)));
    if (!out) throw IoError("short write to " + path.string());
}

Film Film::read_raw(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    char magic[sizeof(kRawMagic) - 1];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kRawMagic, sizeof(magic)) != 0) {
        throw IoError(path.string() + " is not a spectral dump");
    }
    auto get_u32 = [&] {
        unsigned char b[4];
        in.read(reinterpret_cast<char*>(b), 4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    };
    auto get_f64 = [&] {
        unsigned char b[8];
        in.read(reinterpret_cast<char*>(b), 8);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    };
    std::uint32_t w = get_u32();
    std::uint32_t h = get_u32();
    double lmin = get_f64();
    double lmax = get_f64();
    double step = get_f64();
    std::uint32_t count = get_u32();
    WavelengthGrid grid(lmin, lmax, step);
    if (grid.count() != count) throw IoError(path.string() + ": inconsistent grid header");
    Film film(static_cast<int>(w), static_cast<int>(h), grid);
    in.read(reinterpret_cast<char*>(film.bins_.data()),
            static_cast<std::streamsize>(film.bins_.size() * sizeof(float)));
    in.read(reinterpret_cast<char*>(film.counts_.data()),
            static_cast<std::streamsize>(film.counts_.size() * sizeof(std::uint32_t)));
    if (!in) throw IoError(path.string() + ": truncated spectral dump");
    return film;
}

bool Film::operator==(const Film& o) const {
    return width_ == o.width_ && height_ == o.height_ && grid_ == o.grid_ && bins_ == o.bins_ &&
           counts_ == o.counts_;
}

} // namespace fluor
