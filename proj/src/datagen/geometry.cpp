// SPDX-License-Identifier: Apache-2.0
#include "lumen/datagen/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "lumen/core/error.hpp"
#include "lumen/core/rng.hpp"

namespace lumen::datagen {
namespace {

constexpr double kStationSpacingMm = 1.0;

Vec3 catmull_rom(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3,
                 double t) {
  double t2 = t * t, t3 = t2 * t;
  auto w0 = -0.5 * t3 + t2 - 0.5 * t;
  auto w1 = 1.5 * t3 - 2.5 * t2 + 1.0;
  auto w2 = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
  auto w3 = 0.5 * t3 - 0.5 * t2;
  return p0 * w0 + p1 * w1 + p2 * w2 + p3 * w3;
}

// Densely resample a Catmull-Rom spline through the given control points at
// roughly uniform arclength spacing. Endpoint tangents are clamped by
// duplicating the end controls.
std::vector<Vec3> sample_spline(const std::vector<Vec3>& ctrl, double spacing) {
  std::vector<Vec3> padded;
  padded.push_back(ctrl.front() + (ctrl.front() - ctrl[1]));
  padded.insert(padded.end(), ctrl.begin(), ctrl.end());
  padded.push_back(ctrl.back() + (ctrl.back() - ctrl[ctrl.size() - 2]));

  // Oversample, then greedily pick points ~spacing apart.
  std::vector<Vec3> fine;
  for (size_t i = 0; i + 3 < padded.size(); ++i) {
    for (int k = 0; k < 64; ++k) {
      fine.push_back(catmull_rom(padded[i], padded[i + 1], padded[i + 2],
                                 padded[i + 3], k / 64.0));
    }
  }
  fine.push_back(ctrl.back());

  std::vector<Vec3> out;
  out.push_back(fine.front());
  double acc = 0.0;
  for (size_t i = 1; i < fine.size(); ++i) {
    acc += norm(fine[i] - fine[i - 1]);
    if (acc >= spacing || i + 1 == fine.size()) {
      out.push_back(fine[i]);
      acc = 0.0;
    }
  }
  return out;
}

double point_segment_dist_sq(const Vec3& p, const Vec3& a, const Vec3& b,
                             double& proj) {
  Vec3 ab = b - a;
  double len_sq = dot(ab, ab);
  proj = len_sq > 0.0 ? std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0) : 0.0;
  Vec3 q = a + ab * proj;
  Vec3 d = p - q;
  return dot(d, d);
}

// Distance from p to the tube surface, negative inside. Capsule chain with
// radius interpolated per station; a coarse pass over every 8th station
// prunes fine segments that cannot contain the minimum.
double tube_sdf(const LumenGeometry::Tube& tube, const Vec3& p) {
  const auto& pts = tube.points;
  const auto& radii = tube.radii;
  const size_t n = pts.size();
  if (n < 2) return 1e30;

  constexpr size_t kStride = 8;
  double best = 1e30;
  double max_r = *std::max_element(radii.begin(), radii.end());

  for (size_t c = 0; c + 1 < n; c += kStride) {
    size_t hi = std::min(c + kStride, n - 1);
    double proj = 0.0;
    double coarse = std::sqrt(point_segment_dist_sq(p, pts[c], pts[hi], proj));
    // Chord-to-curve sag over kStride stations stays well under this slack.
    double slack = max_r + kStride * kStationSpacingMm;
    if (coarse - slack > best) continue;
    for (size_t i = c; i < hi; ++i) {
      double t = 0.0;
      double d = std::sqrt(point_segment_dist_sq(p, pts[i], pts[i + 1], t));
      double r = radii[i] + (radii[i + 1] - radii[i]) * t;
      best = std::min(best, d - r);
    }
  }
  return best;
}

LumenGeometry::Tube make_tube(const std::vector<Vec3>& ctrl,
                              const std::vector<double>& radius_knots) {
  LumenGeometry::Tube tube;
  tube.points = sample_spline(ctrl, kStationSpacingMm);
  size_t n = tube.points.size();
  tube.radii.resize(n);
  tube.length_mm = 0.0;
  for (size_t i = 1; i < n; ++i) {
    tube.length_mm += norm(tube.points[i] - tube.points[i - 1]);
  }
  // Radius knots are uniform in normalized arclength; interpolate smoothly
  // (cosine easing keeps the profile C1).
  double acc = 0.0;
  size_t nk = radius_knots.size();
  for (size_t i = 0; i < n; ++i) {
    if (i > 0) acc += norm(tube.points[i] - tube.points[i - 1]);
    double u = tube.length_mm > 0 ? acc / tube.length_mm : 0.0;
    double f = u * static_cast<double>(nk - 1);
    size_t k = std::min(static_cast<size_t>(f), nk - 2);
    double t = f - static_cast<double>(k);
    double e = 0.5 - 0.5 * std::cos(t * M_PI);
    tube.radii[i] = radius_knots[k] + (radius_knots[k + 1] - radius_knots[k]) * e;
  }
  return tube;
}

std::vector<double> random_radius_knots(Rng& rng, double base, int count,
                                        double wobble, double taper) {
  std::vector<double> knots(count);
  for (int i = 0; i < count; ++i) {
    double u = static_cast<double>(i) / (count - 1);
    double w = 1.0 + wobble * (rng.uniform() * 2.0 - 1.0);
    knots[i] = base * w * (1.0 - taper * u);
  }
  return knots;
}

// Any unit vector perpendicular to d.
Vec3 perpendicular(const Vec3& d) {
  Vec3 a = std::abs(d.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  return normalized(cross(d, a));
}

Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle_rad) {
  // Rodrigues
  double c = std::cos(angle_rad), s = std::sin(angle_rad);
  return v * c + cross(axis, v) * s + axis * (dot(axis, v) * (1.0 - c));
}

}  // namespace

const char* to_string(Complexity c) {
  switch (c) {
    case Complexity::Straight: return "straight";
    case Complexity::Curved: return "curved";
    case Complexity::Branching: return "branching";
  }
  return "?";
}

Complexity complexity_from_string(const std::string& s) {
  if (s == "straight") return Complexity::Straight;
  if (s == "curved") return Complexity::Curved;
  if (s == "branching") return Complexity::Branching;
  fail(ErrorCode::ConfigInvalid, "unknown complexity '" + s + "'");
}

Vec3 LumenGeometry::Tube::point_at(double s_mm) const {
  double s = std::clamp(s_mm, 0.0, length_mm);
  double acc = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    double seg = norm(points[i] - points[i - 1]);
    if (acc + seg >= s || i + 1 == points.size()) {
      double t = seg > 0 ? (s - acc) / seg : 0.0;
      return points[i - 1] + (points[i] - points[i - 1]) * std::clamp(t, 0.0, 1.0);
    }
    acc += seg;
  }
  return points.back();
}

Vec3 LumenGeometry::Tube::tangent_at(double s_mm) const {
  double s = std::clamp(s_mm, 0.0, length_mm);
  double acc = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    double seg = norm(points[i] - points[i - 1]);
    if (acc + seg >= s || i + 1 == points.size()) {
      return normalized(points[i] - points[i - 1]);
    }
    acc += seg;
  }
  return normalized(points.back() - points[points.size() - 2]);
}

double LumenGeometry::Tube::radius_at(double s_mm) const {
  double s = std::clamp(s_mm, 0.0, length_mm);
  double acc = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    double seg = norm(points[i] - points[i - 1]);
    if (acc + seg >= s || i + 1 == points.size()) {
      double t = seg > 0 ? std::clamp((s - acc) / seg, 0.0, 1.0) : 0.0;
      return radii[i - 1] + (radii[i] - radii[i - 1]) * t;
    }
    acc += seg;
  }
  return radii.back();
}

double LumenGeometry::sdf(const Vec3& p) const {
  double d = tube_sdf(parent, p);
  for (const auto& child : children) {
    d = std::min(d, tube_sdf(child, p));
  }
  return d;
}

std::string LumenGeometry::serialize() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["complexity"] = to_string(complexity);
  auto tube_to_json = [](const Tube& t) {
    nlohmann::json tj;
    tj["length_mm"] = t.length_mm;
    auto& pts = tj["points"] = nlohmann::json::array();
    for (const auto& p : t.points) pts.push_back({p.x, p.y, p.z});
    tj["radii"] = t.radii;
    return tj;
  };
  j["parent"] = tube_to_json(parent);
  auto& ch = j["children"] = nlohmann::json::array();
  for (const auto& c : children) ch.push_back(tube_to_json(c));
  auto& bs = j["branch_spec"] = nlohmann::json::array();
  for (const auto& b : branch_spec) {
    bs.push_back({{"arclength_mm", b.arclength_mm},
                  {"angle_deg", b.angle_deg},
                  {"child_radius_scale", b.child_radius_scale}});
  }
  return j.dump();
}

void LumenGeometry::validate() const {
  auto check_tube = [](const Tube& t) {
    require(t.points.size() >= 2 && t.points.size() == t.radii.size(),
            ErrorCode::ConfigInvalid, "tube needs >= 2 stations");
    for (double r : t.radii) {
      require(r > 0.0, ErrorCode::ConfigInvalid, "tube radius must be > 0");
    }
  };
  check_tube(parent);
  require(children.size() == branch_spec.size(), ErrorCode::ConfigInvalid,
          "branch_spec and children out of sync");
  for (const auto& b : branch_spec) {
    require(b.angle_deg > 10.0 && b.angle_deg < 80.0, ErrorCode::ConfigInvalid,
            "branch angle must lie in (10, 80) degrees");
  }
  for (const auto& c : children) check_tube(c);
}

LumenGeometry generate_geometry(uint64_t seed, Complexity complexity) {
  LumenGeometry geom;
  geom.seed = seed;
  geom.complexity = complexity;
  Rng rng(derive_seed(seed, "lumen.geometry"));

  if (complexity == Complexity::Straight) {
    double length = 120.0;
    double radius = 5.0 + 4.0 * rng.uniform();
    std::vector<Vec3> ctrl = {{0, 0, 0}, {0, 0, length / 3}, {0, 0, 2 * length / 3}, {0, 0, length}};
    geom.parent = make_tube(ctrl, {radius, radius, radius});
    geom.validate();
    return geom;
  }

  // Curved parent: bounded-curvature random walk in control space.
  double base_radius = 5.0 + 4.0 * rng.uniform();
  int n_ctrl = 6;
  double step = 22.0 + 6.0 * rng.uniform();
  std::vector<Vec3> ctrl = {{0, 0, 0}};
  Vec3 dir{0, 0, 1};
  for (int i = 1; i < n_ctrl; ++i) {
    double bend = (8.0 + 14.0 * rng.uniform()) * M_PI / 180.0;
    Vec3 axis = perpendicular(dir);
    axis = rotate_about(axis, dir, rng.uniform(0.0, 2.0 * M_PI));
    dir = normalized(rotate_about(dir, axis, bend));
    ctrl.push_back(ctrl.back() + dir * step);
  }
  geom.parent = make_tube(ctrl, random_radius_knots(rng, base_radius, 5,
                                                    /*wobble=*/0.18,
                                                    /*taper=*/0.25));

  if (complexity == Complexity::Branching) {
    int n_children = 1 + static_cast<int>(rng.uniform_index(2));
    for (int b = 0; b < n_children; ++b) {
      BranchSpec spec;
      spec.arclength_mm =
          geom.parent.length_mm * (0.35 + 0.35 * rng.uniform());
      spec.angle_deg = 25.0 + 35.0 * rng.uniform();
      spec.child_radius_scale = 0.55 + 0.25 * rng.uniform();

      Vec3 origin = geom.parent.point_at(spec.arclength_mm);
      Vec3 tangent = geom.parent.tangent_at(spec.arclength_mm);
      Vec3 axis = rotate_about(perpendicular(tangent), tangent,
                               rng.uniform(0.0, 2.0 * M_PI));
      Vec3 child_dir =
          normalized(rotate_about(tangent, axis, spec.angle_deg * M_PI / 180.0));

      double child_len = 35.0 + 25.0 * rng.uniform();
      double child_r =
          geom.parent.radius_at(spec.arclength_mm) * spec.child_radius_scale;
      std::vector<Vec3> cctrl = {origin};
      Vec3 cdir = child_dir;
      for (int i = 1; i <= 3; ++i) {
        double bend = (5.0 + 8.0 * rng.uniform()) * M_PI / 180.0;
        Vec3 caxis = rotate_about(perpendicular(cdir), cdir,
                                  rng.uniform(0.0, 2.0 * M_PI));
        cdir = normalized(rotate_about(cdir, caxis, bend));
        cctrl.push_back(cctrl.back() + cdir * (child_len / 3.0));
      }
      geom.children.push_back(
          make_tube(cctrl, {child_r, child_r * 0.9, child_r * 0.75}));
      geom.branch_spec.push_back(spec);
    }
  }

  geom.validate();
  return geom;
}

}  // namespace lumen::datagen
