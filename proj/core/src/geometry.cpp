#include "tradestudy/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "tradestudy/units.hpp"

namespace tradestudy {

double near_field_threshold(double boom_length_m) {
  if (!(boom_length_m > 0.0)) throw ValidationError("geometry", "boom_length_m", "must be > 0");
  return boom_length_m / 3.0;
}

Footprint footprint_at_range(const SensorRecord& s, double range_m) {
  if (!(range_m > 0.0)) throw ValidationError(s.id, "range_m", "footprint range must be > 0");
  if (!s.resolution) throw ValidationError(s.id, "resolution", "needed for a footprint");

  Footprint fp;
  fp.range_m = range_m;
  const double range_mm = range_m * 1000.0;
  if (const auto* grid = std::get_if<PixelGrid>(&*s.resolution)) {
    if (!s.fov || !s.fov->vertical_deg)
      throw ValidationError(s.id, "fov", "horizontal and vertical FOV needed for a pixel footprint");
    const double half_h = deg_to_rad(s.fov->horizontal_deg) / 2.0;
    const double half_v = deg_to_rad(*s.fov->vertical_deg) / 2.0;
    if (half_h >= std::numbers::pi / 2.0 || half_v >= std::numbers::pi / 2.0)
      throw ValidationError(s.id, "fov", "pixel footprint needs FOV below 180 degrees");
    fp.width_mm = 2.0 * range_mm * std::tan(half_h) / grid->width;
    fp.height_mm = 2.0 * range_mm * std::tan(half_v) / grid->height;
  } else {
    const auto& scan = std::get<ScanPattern>(*s.resolution);
    if (!scan.horizontal_deg || !scan.vertical_deg)
      throw ValidationError(s.id, "resolution.scan",
                            "horizontal and vertical angular resolution needed for a footprint");
    fp.width_mm = range_mm * deg_to_rad(*scan.horizontal_deg);
    fp.height_mm = range_mm * deg_to_rad(*scan.vertical_deg);
  }
  fp.area_mm2 = fp.width_mm * fp.height_mm;
  return fp;
}

Resolvability feature_resolvable(const SensorRecord& s, double range_m, double feature_diameter_mm,
                                 double required_area_mm2) {
  if (!(feature_diameter_mm > 0.0))
    throw ValidationError(s.id, "feature_diameter_mm", "must be > 0");
  Resolvability r;
  r.footprint = footprint_at_range(s, range_m);
  const double radius = feature_diameter_mm / 2.0;
  const double disc = std::numbers::pi * radius * radius;
  r.measurement_count = static_cast<long>(std::floor(disc / r.footprint.area_mm2));
  r.resolvable = r.footprint.area_mm2 <= required_area_mm2;
  return r;
}

double effective_vertical_fov(double intrinsic_vfov_deg, double tilt_deg, bool spinning) {
  if (!(intrinsic_vfov_deg > 0.0 && intrinsic_vfov_deg <= 180.0))
    throw ValidationError("geometry", "intrinsic_vfov_deg", "must be in (0, 180]");
  if (!(tilt_deg >= 0.0 && tilt_deg < 90.0))
    throw ValidationError("geometry", "tilt_deg", "must be in [0, 90)");
  if (!spinning) return intrinsic_vfov_deg;
  return std::min(180.0, 2.0 * tilt_deg + intrinsic_vfov_deg);
}

std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::valid: return "valid";
    case StageStatus::marginal: return "marginal";
    case StageStatus::invalid: return "invalid";
  }
  return "?";
}

StagePlan stage_plan(const SensorRecord& far, const SensorRecord& near, double boom_length_m) {
  StagePlan plan;
  plan.near_field_max_m = near_field_threshold(boom_length_m);

  if (!far.range_max_m || !near.range_max_m) {
    plan.status = StageStatus::invalid;
    if (!far.range_max_m) plan.notes.push_back(fmt::format("far sensor {} has no known range", far.id));
    if (!near.range_max_m) plan.notes.push_back(fmt::format("near sensor {} has no known range", near.id));
    return plan;
  }

  const double far_min = far.range_min_m.value_or(0.0);
  const double far_max = *far.range_max_m;
  const double near_min = near.range_min_m.value_or(0.0);
  const double near_max = *near.range_max_m;

  plan.far_field_min_m = std::max(far_min, plan.near_field_max_m);
  plan.far_field_max_m = far_max;
  plan.far_credit_max_m = std::min(far_max, kFarRangeCreditCapM);
  plan.overlap_m = near_max - plan.far_field_min_m;

  const bool far_reaches_boom = far_max >= boom_length_m;
  const bool near_inside = near_min < plan.near_field_max_m;
  if (!far_reaches_boom)
    plan.notes.push_back(fmt::format("far sensor {} reaches {} m, short of the {} m boom", far.id,
                                     far_max, boom_length_m));
  if (!near_inside)
    plan.notes.push_back(fmt::format("near sensor {} starts at {} m, outside the near field", near.id,
                                     near_min));

  if (plan.overlap_m <= 0.0) {
    plan.blind_band = std::make_pair(near_max, plan.far_field_min_m);
    plan.notes.push_back(fmt::format("blind band {:.4g}-{:.4g} m ({:.4g} m) between stages", near_max,
                                     plan.far_field_min_m, plan.far_field_min_m - near_max));
  }

  if (!far_reaches_boom || !near_inside) {
    plan.status = StageStatus::invalid;
  } else if (plan.overlap_m > 0.0) {
    plan.status = StageStatus::valid;
  } else if (far_min <= near_max) {
    plan.status = StageStatus::marginal;
    plan.notes.push_back(fmt::format("far sensor {} can cover the band below the near-field boundary",
                                     far.id));
  } else {
    plan.status = StageStatus::invalid;
  }
  return plan;
}

std::string_view to_string(Strategy s) {
  return s == Strategy::one_stage ? "one_stage" : "two_stage";
}

Strategy strategy_recommend(double boom_length_m, const TubeSection& tube,
                            const StrategyThresholds& t) {
  if (!(boom_length_m > 0.0)) throw ValidationError("geometry", "boom_length_m", "must be > 0");
  if (!(tube.depth_m > 0.0) || !(tube.width_m > 0.0))
    throw ValidationError("tube", "dimensions", "depth and width must be > 0");
  if (boom_length_m >= t.min_two_stage_boom_m) return Strategy::two_stage;
  if (std::min(tube.depth_m, tube.width_m) >= t.clearance_factor * boom_length_m)
    return Strategy::two_stage;
  return Strategy::one_stage;
}

}  // namespace tradestudy
