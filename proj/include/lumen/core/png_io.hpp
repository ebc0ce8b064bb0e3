// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "lumen/core/image.hpp"

namespace lumen {

// 8-bit RGB PNG. Input values are clamped to [0,1] and quantized.
void write_rgb8_png(const std::string& path, const RgbFrame& img);
RgbFrame read_rgb8_png(const std::string& path);

// Single-channel 16-bit PNG (depth files).
void write_gray16_png(const std::string& path, const Image<uint16_t>& img);
Image<uint16_t> read_gray16_png(const std::string& path);

}  // namespace lumen
