#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "tradestudy/geometry.hpp"
#include "tradestudy/units.hpp"

namespace tradestudy {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

/// Closed arc [start, start + length] on the circle, length in [0, 2pi].
struct Arc {
  double start = 0.0;
  double length = 0.0;
};

/// Arcs as non-wrapping sub-intervals of [0, 2pi].
using IntervalSet = std::vector<std::pair<double, double>>;

IntervalSet to_intervals(const Arc& arc) {
  if (arc.length >= kTwoPi) return {{0.0, kTwoPi}};
  const double a = wrap(arc.start);
  const double b = a + arc.length;
  if (b <= kTwoPi) return {{a, b}};
  return {{a, kTwoPi}, {0.0, b - kTwoPi}};
}

IntervalSet intersect(const IntervalSet& x, const IntervalSet& y) {
  IntervalSet out;
  for (const auto& [a0, a1] : x)
    for (const auto& [b0, b1] : y) {
      const double lo = std::max(a0, b0);
      const double hi = std::min(a1, b1);
      if (lo <= hi) out.emplace_back(lo, hi);
    }
  return out;
}

double circular_distance(double a, double b) {
  const double d = std::fabs(wrap(a) - wrap(b));
  return std::min(d, kTwoPi - d);
}

/// Directions a mounted sensor sees in the section plane, as angles measured
/// counter-clockwise from the +x (right wall) direction.
IntervalSet mount_coverage(const Mount& m) {
  const auto& s = m.sensor;
  if (!s.fov || !s.fov->vertical_deg)
    throw ValidationError(s.id, "fov.vertical_deg", "needed for section coverage");
  const double vfov = std::min(*s.fov->vertical_deg, 180.0);
  if (!(m.tilt_deg > -90.0 && m.tilt_deg < 90.0))
    throw ValidationError(s.id, "tilt_deg", "mount tilt must be in (-90, 90)");

  if (m.spinning) {
    const double half = deg_to_rad(effective_vertical_fov(vfov, std::fabs(m.tilt_deg), true)) / 2.0;
    if (half >= std::numbers::pi / 2.0) return {{0.0, kTwoPi}};
    IntervalSet out = to_intervals({-half, 2.0 * half});
    for (const auto& iv : to_intervals({std::numbers::pi - half, 2.0 * half})) out.push_back(iv);
    return out;
  }
  const double tilt = deg_to_rad(m.tilt_deg);
  const double center = m.faces_left ? std::numbers::pi - tilt : tilt;
  const double half = deg_to_rad(vfov) / 2.0;
  return to_intervals({center - half, 2.0 * half});
}

struct SurfaceGeometry {
  IntervalSet span;      // directions hitting the surface
  double normal = 0.0;   // direction of the perpendicular foot
  double distance = 0.0; // perpendicular distance from the body
};

SurfaceGeometry surface_geometry(Surface surface, const TubeSection& t) {
  const double x0 = t.body_lateral_m;
  const double y0 = t.body_height_m;
  const double right = t.width_m / 2.0 - x0;
  const double left = t.width_m / 2.0 + x0;
  const double up = t.depth_m - y0;
  const double down = y0;

  // Corner directions, counter-clockwise from +x.
  const double to_br = std::atan2(-down, right);
  const double to_tr = std::atan2(up, right);
  const double to_tl = std::atan2(up, -left);
  const double to_bl = std::atan2(-down, -left);

  auto arc = [](double from, double to) { return to_intervals({from, wrap(to - from)}); };
  switch (surface) {
    case Surface::right_wall: return {arc(to_br, to_tr), 0.0, right};
    case Surface::ceiling: return {arc(to_tr, to_tl), std::numbers::pi / 2.0, up};
    case Surface::left_wall: return {arc(to_tl, to_bl), std::numbers::pi, left};
    case Surface::floor: return {arc(to_bl, to_br), 3.0 * std::numbers::pi / 2.0, down};
  }
  return {};
}

/// Distance to the nearest surface point whose direction lies in `dirs`.
std::optional<double> nearest_distance(const IntervalSet& dirs, const SurfaceGeometry& g) {
  std::optional<double> best;
  for (const auto& [a, b] : dirs) {
    const double n = wrap(g.normal);
    double off = 0.0;
    if (!(n >= a && n <= b)) off = std::min(circular_distance(n, a), circular_distance(n, b));
    const double d = g.distance / std::cos(off);
    if (!best || d < *best) best = d;
  }
  return best;
}

}  // namespace

std::string_view to_string(Surface s) {
  switch (s) {
    case Surface::floor: return "floor";
    case Surface::right_wall: return "right_wall";
    case Surface::ceiling: return "ceiling";
    case Surface::left_wall: return "left_wall";
  }
  return "?";
}

void validate(const TubeSection& t) {
  if (!(t.depth_m > 0.0) || !std::isfinite(t.depth_m))
    throw ValidationError("tube", "depth_m", "must be > 0");
  if (!(t.width_m > 0.0) || !std::isfinite(t.width_m))
    throw ValidationError("tube", "width_m", "must be > 0");
  if (!(t.body_height_m > 0.0 && t.body_height_m < t.depth_m))
    throw ValidationError("tube", "body_height_m", "body must be strictly between floor and ceiling");
  if (!(std::fabs(t.body_lateral_m) < t.width_m / 2.0))
    throw ValidationError("tube", "body_lateral_m", "body must be strictly between the walls");
}

const SurfaceCoverage& CoverageReport::at(Surface s) const {
  for (const auto& c : surfaces)
    if (c.surface == s) return c;
  throw Error("surface missing from coverage report");
}

bool CoverageReport::all_visible() const {
  return std::all_of(surfaces.begin(), surfaces.end(), [](const auto& c) { return c.visible; });
}

CoverageReport section_coverage(std::span<const Mount> mounts, const TubeSection& tube,
                                double boom_length_m) {
  validate(tube);
  if (!(boom_length_m > 0.0)) throw ValidationError("geometry", "boom_length_m", "must be > 0");

  CoverageReport report;
  std::vector<IntervalSet> coverage;
  for (const auto& m : mounts) {
    if (!m.sensor.range_max_m)
      throw ValidationError(m.sensor.id, "range_max_m", "needed for section coverage");
    coverage.push_back(mount_coverage(m));
    const double vfov = std::min(*m.sensor.fov->vertical_deg, 180.0);
    report.effective_vfov_deg.push_back(
        m.spinning ? effective_vertical_fov(vfov, std::fabs(m.tilt_deg), true) : vfov);
  }

  for (std::size_t k = 0; k < kAllSurfaces.size(); ++k) {
    SurfaceCoverage& cov = report.surfaces[k];
    cov.surface = kAllSurfaces[k];
    const SurfaceGeometry g = surface_geometry(cov.surface, tube);
    for (std::size_t i = 0; i < mounts.size(); ++i) {
      const auto seen = intersect(coverage[i], g.span);
      const auto d = nearest_distance(seen, g);
      if (!d) continue;
      cov.in_view = true;
      if (!cov.nearest_m || *d < *cov.nearest_m) cov.nearest_m = *d;
      if (*d <= *mounts[i].sensor.range_max_m) cov.visible = true;
    }
    cov.beyond_range = cov.in_view && !cov.visible;
    cov.within_boom_reach = cov.nearest_m && *cov.nearest_m <= boom_length_m;
  }
  return report;
}

}  // namespace tradestudy
