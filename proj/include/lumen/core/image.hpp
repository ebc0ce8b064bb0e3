// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "lumen/core/error.hpp"

namespace lumen {

// Row-major H x W x C raster with interleaved channels.
template <class T>
class Image {
 public:
  Image() = default;
  Image(int height, int width, int channels, T fill = T{})
      : height_(height),
        width_(width),
        channels_(channels),
        data_(static_cast<size_t>(height) * width * channels, fill) {}

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(int y, int x, int c = 0) {
    return data_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
  }
  const T& at(int y, int x, int c = 0) const {
    return data_[(static_cast<size_t>(y) * width_ + x) * channels_ + c];
  }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

  bool same_shape(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const Image& a, const Image& b) {
    return a.height_ == b.height_ && a.width_ == b.width_ &&
           a.channels_ == b.channels_ && a.data_ == b.data_;
  }

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<T> data_;
};

// Network input / rendered frame; channel values in [0,1].
using RgbFrame = Image<float>;

// Depth in millimeters plus validity. Invalid pixels are exactly the
// far-clip clamps and hold the far distance.
struct DepthMap {
  Image<float> mm;
  Image<uint8_t> valid;

  DepthMap() = default;
  DepthMap(int height, int width)
      : mm(height, width, 1), valid(height, width, 1, 1) {}

  int height() const { return mm.height(); }
  int width() const { return mm.width(); }
};

inline void check_same_shape(const Image<float>& a, const Image<float>& b,
                             const char* what) {
  require(a.same_shape(b), ErrorCode::ShapeMismatch,
          std::string(what) + ": shape mismatch");
}

}  // namespace lumen
