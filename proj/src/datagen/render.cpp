// SPDX-License-Identifier: Apache-2.0
#include "lumen/datagen/render.hpp"

#include <algorithm>
#include <cmath>

#include "lumen/core/error.hpp"
#include "lumen/core/rng.hpp"

namespace lumen::datagen {
namespace {

constexpr double kHitTolMm = 1e-3;
constexpr double kMinStepMm = 0.02;
constexpr double kNormalEpsMm = 0.05;
constexpr double kLightRefMm = 14.0;  // depth at which the falloff term is 1
constexpr double kAmbient = 0.035;

// Lattice value noise in 3D, two octaves. Deterministic in (seed, position).
double hash_to_unit(uint64_t h) {
  uint64_t s = h;
  return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

double lattice(uint64_t seed, int64_t ix, int64_t iy, int64_t iz) {
  uint64_t h = seed;
  h ^= static_cast<uint64_t>(ix) * 0x8da6b343ull;
  h ^= static_cast<uint64_t>(iy) * 0xd8163841ull;
  h ^= static_cast<uint64_t>(iz) * 0xcb1ab31full;
  return hash_to_unit(h);
}

double smooth(double t) { return t * t * (3.0 - 2.0 * t); }

double value_noise3(uint64_t seed, const Vec3& p) {
  double fx = std::floor(p.x), fy = std::floor(p.y), fz = std::floor(p.z);
  int64_t ix = static_cast<int64_t>(fx), iy = static_cast<int64_t>(fy),
          iz = static_cast<int64_t>(fz);
  double tx = smooth(p.x - fx), ty = smooth(p.y - fy), tz = smooth(p.z - fz);
  double acc = 0.0;
  for (int dz = 0; dz <= 1; ++dz) {
    for (int dy = 0; dy <= 1; ++dy) {
      for (int dx = 0; dx <= 1; ++dx) {
        double w = (dx ? tx : 1.0 - tx) * (dy ? ty : 1.0 - ty) *
                   (dz ? tz : 1.0 - tz);
        acc += w * lattice(seed, ix + dx, iy + dy, iz + dz);
      }
    }
  }
  return acc;
}

// Two octaves in [0,1].
double wall_texture(uint64_t seed, const Vec3& p_mm) {
  double n = 0.65 * value_noise3(seed, p_mm * 0.25) +
             0.35 * value_noise3(seed ^ 0x9e3779b97f4a7c15ull, p_mm * 0.8);
  return n;
}

struct Hit {
  bool valid = false;
  double t = 0.0;  // distance along the ray, mm
};

Hit march(const LumenGeometry& geom, const Vec3& origin, const Vec3& dir,
          double near_mm, double far_mm) {
  double t = near_mm;
  double last_inside_t = near_mm;
  while (t < far_mm) {
    Vec3 p = origin + dir * t;
    double d = geom.sdf(p);
    if (d >= 0.0) {
      // Overshot the wall; bisect between the last inside sample and here.
      double lo = last_inside_t, hi = t;
      for (int i = 0; i < 40 && hi - lo > kHitTolMm; ++i) {
        double mid = 0.5 * (lo + hi);
        if (geom.sdf(origin + dir * mid) < 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return {true, 0.5 * (lo + hi)};
    }
    if (-d < kHitTolMm) {
      return {true, t};
    }
    last_inside_t = t;
    t += std::max(kMinStepMm, 0.9 * -d);
  }
  return {false, far_mm};
}

Vec3 sdf_normal(const LumenGeometry& geom, const Vec3& p) {
  double e = kNormalEpsMm;
  Vec3 g{geom.sdf({p.x + e, p.y, p.z}) - geom.sdf({p.x - e, p.y, p.z}),
         geom.sdf({p.x, p.y + e, p.z}) - geom.sdf({p.x, p.y - e, p.z}),
         geom.sdf({p.x, p.y, p.z + e}) - geom.sdf({p.x, p.y, p.z - e})};
  double n = norm(g);
  if (n < 1e-12) return {0, 0, 1};
  return g * (1.0 / n);
}

double luma(const RgbFrame& f, int y, int x) {
  return (f.at(y, x, 0) + f.at(y, x, 1) + f.at(y, x, 2)) / 3.0;
}

}  // namespace

void CameraModel::look_along(const Vec3& dir, double roll_rad) {
  forward = normalized(dir);
  Vec3 world_up =
      std::abs(forward.y) > 0.95 ? Vec3{0, 0, 1} : Vec3{0, 1, 0};
  right = normalized(cross(forward, world_up));
  up = cross(right, forward);
  if (roll_rad != 0.0) {
    double c = std::cos(roll_rad), s = std::sin(roll_rad);
    Vec3 r = right * c + up * s;
    Vec3 u = up * c - right * s;
    right = r;
    up = u;
  }
}

Vec3 CameraModel::ray_direction(int px, int py) const {
  double tan_h = std::tan(0.5 * fov_deg * M_PI / 180.0);
  double tan_v = tan_h * static_cast<double>(height) / width;
  double ndc_x = (2.0 * (px + 0.5) / width - 1.0) * tan_h;
  double ndc_y = (1.0 - 2.0 * (py + 0.5) / height) * tan_v;  // row 0 = top
  return normalized(forward + right * ndc_x + up * ndc_y);
}

void CameraModel::validate() const {
  require(near_mm > 0.0 && near_mm < far_mm, ErrorCode::ConfigInvalid,
          "camera clip distances must satisfy 0 < near < far");
  require(fov_deg > 30.0 && fov_deg < 170.0, ErrorCode::ConfigInvalid,
          "camera fov must lie in (30, 170) degrees");
  require(width > 0 && height > 0, ErrorCode::ConfigInvalid,
          "camera image size must be positive");
}

void AppearanceParams::validate() const {
  for (double a : base_albedo) {
    require(a >= 0.0 && a <= 1.0, ErrorCode::ConfigInvalid,
            "base_albedo components must lie in [0,1]");
  }
  require(specular_strength >= 0.0 && specular_strength <= 1.0,
          ErrorCode::ConfigInvalid, "specular_strength must lie in [0,1]");
  require(vignette_strength >= 0.0 && vignette_strength <= 1.0,
          ErrorCode::ConfigInvalid, "vignette_strength must lie in [0,1]");
  require(light_falloff_exp >= 0.0, ErrorCode::ConfigInvalid,
          "light_falloff_exp must be >= 0");
  require(noise_sigma >= 0.0, ErrorCode::ConfigInvalid,
          "noise_sigma must be >= 0");
}

std::pair<RgbFrame, DepthMap> render_frame(const LumenGeometry& geom,
                                           const CameraModel& cam,
                                           const AppearanceParams& app) {
  cam.validate();
  app.validate();
  require(geom.sdf(cam.position) < 0.0, ErrorCode::CameraOutsideLumen,
          "camera origin is not inside the lumen");

  RgbFrame rgb(cam.height, cam.width, 3);
  DepthMap depth(cam.height, cam.width);
  Rng noise_rng(derive_seed(app.texture_seed, "render.sensor_noise"));

  for (int y = 0; y < cam.height; ++y) {
    for (int x = 0; x < cam.width; ++x) {
      Vec3 dir = cam.ray_direction(x, y);
      Hit hit = march(geom, cam.position, dir, cam.near_mm, cam.far_mm);

      double r = 0.0, g = 0.0, b = 0.0;
      if (hit.valid) {
        depth.mm.at(y, x) = static_cast<float>(hit.t);
        depth.valid.at(y, x) = 1;

        Vec3 p = cam.position + dir * hit.t;
        Vec3 n = sdf_normal(geom, p) * -1.0;  // faces the lumen interior
        Vec3 to_light = dir * -1.0;           // light at the camera
        double lambert = std::max(0.0, dot(n, to_light));
        double falloff =
            std::pow(kLightRefMm / std::max(hit.t, 1.0), app.light_falloff_exp);
        double tex = 1.0 + 0.5 * (wall_texture(app.texture_seed, p) - 0.5);
        double shade = std::min(1.5, lambert * falloff) * tex + kAmbient;
        double spec = app.specular_strength *
                      std::pow(std::max(0.0, dot(n, to_light)), 40.0) *
                      std::min(1.0, falloff);
        r = app.base_albedo[0] * shade + spec;
        g = app.base_albedo[1] * shade + spec;
        b = app.base_albedo[2] * shade + spec;
      } else {
        depth.mm.at(y, x) = static_cast<float>(cam.far_mm);
        depth.valid.at(y, x) = 0;
      }

      double cx = 2.0 * (x + 0.5) / cam.width - 1.0;
      double cy = 2.0 * (y + 0.5) / cam.height - 1.0;
      double vignette =
          1.0 - app.vignette_strength * 0.5 * (cx * cx + cy * cy);
      r *= vignette;
      g *= vignette;
      b *= vignette;

      if (app.noise_sigma > 0.0) {
        r += noise_rng.normal(0.0, app.noise_sigma);
        g += noise_rng.normal(0.0, app.noise_sigma);
        b += noise_rng.normal(0.0, app.noise_sigma);
      }
      rgb.at(y, x, 0) = static_cast<float>(std::clamp(r, 0.0, 1.0));
      rgb.at(y, x, 1) = static_cast<float>(std::clamp(g, 0.0, 1.0));
      rgb.at(y, x, 2) = static_cast<float>(std::clamp(b, 0.0, 1.0));
    }
  }
  return {std::move(rgb), std::move(depth)};
}

RgbFrame apply_domain_shift(const RgbFrame& frame,
                            const AppearanceParams& app_target,
                            uint64_t seed) {
  app_target.validate();
  RgbFrame out = frame;
  const int h = frame.height(), w = frame.width();
  const double cells = 7.0;  // overlay pattern granularity

  // Textured tint: blend each pixel toward base_albedo by a smooth pattern,
  // so a neutral albedo leaves the frame untouched.
  bool tinted = app_target.base_albedo[0] != 1.0 ||
                app_target.base_albedo[1] != 1.0 ||
                app_target.base_albedo[2] != 1.0;
  if (tinted) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        Vec3 q{cells * x / w, cells * y / h, 0.37};
        double pat = 0.35 + 0.65 * value_noise3(app_target.texture_seed, q);
        for (int c = 0; c < 3; ++c) {
          double gain = 1.0 + (app_target.base_albedo[c] - 1.0) * pat;
          out.at(y, x, c) = static_cast<float>(out.at(y, x, c) * gain);
        }
      }
    }
  }

  if (app_target.specular_strength > 0.0) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double l = luma(out, y, x);
        double boost = app_target.specular_strength * l * l * l;
        for (int c = 0; c < 3; ++c) {
          out.at(y, x, c) = static_cast<float>(out.at(y, x, c) + boost);
        }
      }
    }
  }

  if (app_target.vignette_strength > 0.0) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double cx = 2.0 * (x + 0.5) / w - 1.0;
        double cy = 2.0 * (y + 0.5) / h - 1.0;
        double v = 1.0 - app_target.vignette_strength * 0.5 * (cx * cx + cy * cy);
        for (int c = 0; c < 3; ++c) {
          out.at(y, x, c) = static_cast<float>(out.at(y, x, c) * v);
        }
      }
    }
  }

  if (app_target.noise_sigma > 0.0) {
    Rng rng(derive_seed(seed, "domain_shift.noise"));
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        for (int c = 0; c < 3; ++c) {
          out.at(y, x, c) = static_cast<float>(
              out.at(y, x, c) + rng.normal(0.0, app_target.noise_sigma));
        }
      }
    }
  }

  for (float& v : out.raw()) v = std::clamp(v, 0.0f, 1.0f);
  return out;
}

}  // namespace lumen::datagen
