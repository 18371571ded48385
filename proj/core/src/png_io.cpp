// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#include "png_io.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <vector>

#include "fluor/errors.hpp"

namespace fluor {
namespace {

std::uint32_t crc32_update(std::uint32_t crc, const std::uint8_t* data, std::size_t n) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    for (std::size_t i = 0; i < n; ++i) crc = table[(crc ^ data[i]) & 0xffu] ^ (crc >> 8);
    return crc;
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void write_chunk(std::ofstream& out, const char type[4], const std::vector<std::uint8_t>& data) {
    std::vector<std::uint8_t> buf;
    put_be32(buf, static_cast<std::uint32_t>(data.size()));
    buf.insert(buf.end(), type, type + 4);
    buf.insert(buf.end(), data.begin(), data.end());
    std::uint32_t crc = crc32_update(0xffffffffu, buf.data() + 4, buf.size() - 4) ^ 0xffffffffu;
    put_be32(buf, crc);
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

} // namespace

void write_png_rgb8(const std::filesystem::path& path, int width, int height,
                    const std::uint8_t* rgb) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    out.write(reinterpret_cast<const char*>(sig), 8);

    std::vector<std::uint8_t> ihdr;
    put_be32(ihdr, static_cast<std::uint32_t>(width));
    put_be32(ihdr, static_cast<std::uint32_t>(height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(2);  // truecolor
    ihdr.push_back(0);  // compression
    ihdr.push_back(0);  // filter
    ihdr.push_back(0);  // no interlace
    write_chunk(out, "IHDR", ihdr);

    // raw image: filter byte 0 before each scanline
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(height) * (static_cast<std::size_t>(width) * 3 + 1));
    for (int y = 0; y < height; ++y) {
        raw.push_back(0);
        const std::uint8_t* row = rgb + static_cast<std::size_t>(y) * width * 3;
        raw.insert(raw.end(), row, row + static_cast<std::size_t>(width) * 3);
    }

    // zlib stream with stored deflate blocks
    std::vector<std::uint8_t> idat;
    idat.push_back(0x78);
    idat.push_back(0x01);
    std::size_t pos = 0;
    while (pos < raw.size()) {
        std::size_t n = std::min<std::size_t>(raw.size() - pos, 65535);
        bool final = pos + n == raw.size();
        idat.push_back(final ? 1 : 0);
        idat.push_back(static_cast<std::uint8_t>(n & 0xffu));
        idat.push_back(static_cast<std::uint8_t>(n >> 8));
        idat.push_back(static_cast<std::uint8_t>(~n & 0xffu));
        idat.push_back(static_cast<std::uint8_t>((~n >> 8) & 0xffu));
        idat.insert(idat.end(), raw.begin() + static_cast<std::ptrdiff_t>(pos),
                    raw.begin() + static_cast<std::ptrdiff_t>(pos + n));
        pos += n;
    }
    std::uint32_t a = 1, b = 0;
    for (std::uint8_t byte : raw) {
        a = (a + byte) % 65521u;
        b = (b + a) % 65521u;
    }
    put_be32(idat, (b << 16) | a);
    write_chunk(out, "IDAT", idat);
    write_chunk(out, "IEND", {});
    if (!out) throw IoError("short write to " + path.string());
}

} // namespace fluor
