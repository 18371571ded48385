// Copyright 2026 The Fluor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>

namespace fluor {

/// Write an 8-bit RGB PNG (stored-block deflate, no external deps).
void write_png_rgb8(const std::filesystem::path& path, int width, int height,
                    const std::uint8_t* rgb);

} // namespace fluor
