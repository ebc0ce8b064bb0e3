// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace lumen::datagen {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) {
  double n = norm(a);
  return {a.x / n, a.y / n, a.z / n};
}

enum class Complexity { Straight, Curved, Branching };
const char* to_string(Complexity c);
Complexity complexity_from_string(const std::string& s);

struct BranchSpec {
  double arclength_mm = 0.0;       // along the parent centerline
  double angle_deg = 0.0;          // against the parent tangent, in (10, 80)
  double child_radius_scale = 1.0; // relative to the parent radius at the branch
};

// Airway-like tube: a densely sampled C1 centerline with a smoothly varying
// radius, plus optional child tubes. The interior SDF is the union of
// capsule-chain tubes (negative inside the lumen).
struct LumenGeometry {
  struct Tube {
    std::vector<Vec3> points;   // arclength-ordered stations, ~1 mm apart
    std::vector<double> radii;  // radius at each station, > 0
    double length_mm = 0.0;

    // Position / unit tangent / radius at a given arclength.
    Vec3 point_at(double s_mm) const;
    Vec3 tangent_at(double s_mm) const;
    double radius_at(double s_mm) const;
  };

  Tube parent;
  std::vector<Tube> children;
  std::vector<BranchSpec> branch_spec;
  uint64_t seed = 0;
  Complexity complexity = Complexity::Straight;

  // Signed distance in mm; < 0 inside the lumen.
  double sdf(const Vec3& p) const;

  std::string serialize() const;  // canonical JSON, for determinism checks
  void validate() const;
};

LumenGeometry generate_geometry(uint64_t seed, Complexity complexity);

}  // namespace lumen::datagen
