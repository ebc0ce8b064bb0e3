// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>

#include "lumen/core/image.hpp"
#include "lumen/datagen/geometry.hpp"

namespace lumen::datagen {

// Pinhole camera with a rigid pose; the basis vectors form a right-handed
// frame (forward into the scene, up toward image top).
struct CameraModel {
  double fov_deg = 90.0;  // horizontal
  int width = 256;
  int height = 256;
  double near_mm = 1.0;
  double far_mm = 100.0;
  Vec3 position{0, 0, 0};
  Vec3 forward{0, 0, 1};
  Vec3 up{0, 1, 0};
  Vec3 right{1, 0, 0};

  void look_along(const Vec3& dir, double roll_rad = 0.0);
  Vec3 ray_direction(int px, int py) const;  // unit length
  void validate() const;
};

// Photometric controls for rendering and for the synthetic domain gap.
// In apply_domain_shift the neutral values (albedo 1,1,1 and zero strengths)
// leave the frame untouched.
struct AppearanceParams {
  double base_albedo[3] = {0.90, 0.68, 0.62};
  uint64_t texture_seed = 0;
  double specular_strength = 0.15;  // [0,1]
  double vignette_strength = 0.10;  // [0,1]
  double light_falloff_exp = 2.0;   // point light co-located with the camera
  double noise_sigma = 0.0;

  void validate() const;
};

// Ray-march the lumen interior. Depth is the Euclidean distance (mm) from the
// camera center to the first wall hit, clamped to far_mm with valid=0 where
// clamped. Throws CameraOutsideLumen if the camera origin is not inside.
std::pair<RgbFrame, DepthMap> render_frame(const LumenGeometry& geom,
                                           const CameraModel& cam,
                                           const AppearanceParams& app);

// Photometric-only target-domain transformation: textured color shift toward
// app_target.base_albedo, highlight boost, vignetting, and sensor noise.
// Pixel geometry is untouched, so the paired DepthMap stays valid.
RgbFrame apply_domain_shift(const RgbFrame& frame,
                            const AppearanceParams& app_target, uint64_t seed);

}  // namespace lumen::datagen
