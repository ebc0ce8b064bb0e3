// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "lumen/core/image.hpp"

namespace lumen {

// Depth file encoding: depth_mm = raw * scale_mm_per_unit. Raw value 65535 is
// reserved for far-clip (invalid) pixels; with the default scale far/65535 it
// decodes back to the far distance exactly.
inline constexpr uint16_t kInvalidDepthRaw = 65535;
inline constexpr double kDefaultDepthScale = 100.0 / 65535.0;

inline Image<uint16_t> encode_depth(const DepthMap& d, double scale_mm_per_unit) {
  Image<uint16_t> raw(d.height(), d.width(), 1);
  for (int y = 0; y < d.height(); ++y) {
    for (int x = 0; x < d.width(); ++x) {
      if (!d.valid.at(y, x)) {
        raw.at(y, x) = kInvalidDepthRaw;
      } else {
        long q = std::lround(d.mm.at(y, x) / scale_mm_per_unit);
        raw.at(y, x) = static_cast<uint16_t>(std::clamp<long>(q, 0, 65534));
      }
    }
  }
  return raw;
}

inline DepthMap decode_depth(const Image<uint16_t>& raw, double scale_mm_per_unit) {
  DepthMap d(raw.height(), raw.width());
  for (int y = 0; y < raw.height(); ++y) {
    for (int x = 0; x < raw.width(); ++x) {
      uint16_t v = raw.at(y, x);
      d.mm.at(y, x) = static_cast<float>(v * scale_mm_per_unit);
      d.valid.at(y, x) = (v != kInvalidDepthRaw) ? 1 : 0;
    }
  }
  return d;
}

}  // namespace lumen
