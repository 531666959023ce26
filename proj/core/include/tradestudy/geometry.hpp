#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tradestudy/catalog.hpp"

namespace tradestudy {

/// Per-measurement footprint area required to resolve the smallest graspable
/// feature at the near-field boundary (inclusive).
inline constexpr double kRequiredFootprintMm2 = 25.0;
/// Smallest graspable feature: a hemisphere the size of the gripper palm.
inline constexpr double kGraspFeatureDiameterMm = 50.0;
/// Far-field range beyond this earns no additional scoring credit.
inline constexpr double kFarRangeCreditCapM = 20.0;

/// Near-field sensing happens within one third of the boom length.
double near_field_threshold(double boom_length_m);

struct Footprint {
  double range_m = 0.0;
  double width_mm = 0.0;
  double height_mm = 0.0;
  double area_mm2 = 0.0;
};

/// Surface patch covered by one measurement at range r.
/// Pixel grid: 2 r tan(fov/2) / N per axis. Scan pattern: r * dtheta per axis
/// (small angle). Throws ValidationError if the needed fields are absent.
Footprint footprint_at_range(const SensorRecord& sensor, double range_m);

struct Resolvability {
  bool resolvable = false;
  long measurement_count = 0;  // floor(feature disc area / footprint area)
  Footprint footprint;
};

Resolvability feature_resolvable(const SensorRecord& sensor, double range_m,
                                 double feature_diameter_mm = kGraspFeatureDiameterMm,
                                 double required_area_mm2 = kRequiredFootprintMm2);

/// Vertical field of view after mounting. A spinning mount tilted by `tilt`
/// sweeps 2 * tilt + intrinsic, capped at 180. A static mount keeps the
/// intrinsic value. Requires 0 < intrinsic <= 180 and 0 <= tilt < 90.
double effective_vertical_fov(double intrinsic_vfov_deg, double tilt_deg, bool spinning);

/// Rectangular tube cross-section with the robot body as a point.
/// body_lateral_m is measured from the centerline, positive toward the right wall.
struct TubeSection {
  double depth_m = 0.0;
  double width_m = 0.0;
  double body_height_m = 0.0;
  double body_lateral_m = 0.0;

  static TubeSection centered(double depth_m, double width_m) {
    return {depth_m, width_m, depth_m / 2.0, 0.0};
  }
};

/// Throws ValidationError for degenerate sections or a body outside the section.
void validate(const TubeSection& tube);

/// A sensor as mounted on the body. Tilt is the elevation of the optical axis
/// above horizontal; negative tilts point down. Static mounts face the right
/// wall unless `faces_left` is set. Spinning mounts rotate about the vertical
/// axis and see both sides.
struct Mount {
  SensorRecord sensor;
  double tilt_deg = 0.0;
  bool spinning = false;
  bool faces_left = false;
};

enum class Surface { floor, right_wall, ceiling, left_wall };
inline constexpr std::array<Surface, 4> kAllSurfaces = {Surface::floor, Surface::right_wall,
                                                        Surface::ceiling, Surface::left_wall};
std::string_view to_string(Surface s);

struct SurfaceCoverage {
  Surface surface = Surface::floor;
  bool in_view = false;       // some sensor's angular interval reaches the surface
  bool visible = false;       // ... and the nearest such point is within that sensor's range
  bool beyond_range = false;  // in view but out of range for every sensor seeing it
  std::optional<double> nearest_m;  // nearest in-view point over all sensors
  bool within_boom_reach = false;   // nearest_m <= boom length
};

struct CoverageReport {
  std::array<SurfaceCoverage, 4> surfaces;  // kAllSurfaces order
  std::vector<double> effective_vfov_deg;    // per mount

  const SurfaceCoverage& at(Surface s) const;
  bool walls_visible() const { return at(Surface::left_wall).visible && at(Surface::right_wall).visible; }
  bool all_visible() const;
};

/// Angular visibility of floor, walls and ceiling from the body. No occlusion:
/// from inside a convex section every ray hits exactly one surface.
CoverageReport section_coverage(std::span<const Mount> mounts, const TubeSection& tube,
                                double boom_length_m);

enum class StageStatus { valid, marginal, invalid };
std::string_view to_string(StageStatus s);

/// Range hand-off between a far-field body sensor and a near-field distal
/// sensor. The far stage is used from max(far.range_min, L/3) outward; the
/// near stage must reach the L/3 boundary.
///
/// valid:    far reaches L, near starts inside L/3, overlap > 0.
/// marginal: as valid but the near sensor stops short of L/3; the far sensor
///           physically covers the gap if driven below L/3.
/// invalid:  anything else.
struct StagePlan {
  double near_field_max_m = 0.0;
  double far_field_min_m = 0.0;
  double far_field_max_m = 0.0;
  double far_credit_max_m = 0.0;  // far_field_max_m capped for scoring
  double overlap_m = 0.0;
  std::optional<std::pair<double, double>> blind_band;
  StageStatus status = StageStatus::invalid;
  std::vector<std::string> notes;

  bool valid() const { return status == StageStatus::valid; }
};

StagePlan stage_plan(const SensorRecord& far_sensor, const SensorRecord& near_sensor,
                     double boom_length_m);

enum class Strategy { one_stage, two_stage };
std::string_view to_string(Strategy s);

/// Defaults are engineering judgment, not derived values.
struct StrategyThresholds {
  double min_two_stage_boom_m = 5.0;
  double clearance_factor = 2.0;
};

/// two_stage when the boom is long, or the section is wide relative to the
/// boom (min(depth, width) >= clearance_factor * L). Both bounds inclusive.
Strategy strategy_recommend(double boom_length_m, const TubeSection& tube,
                            const StrategyThresholds& thresholds = {});

/// Mount preset file: body mounts, the section to check them against and an
/// optional (far, near) pair for the stage plan.
struct MountConfig {
  std::vector<Mount> mounts;
  TubeSection section;
  std::optional<std::pair<std::string, std::string>> stage;  // far id, near id
};

/// Sensor ids resolve against `catalog`. Section dimensions default to the
/// mission's tube when `default_section` is given and the file omits them.
MountConfig load_mounts(const std::string& path, const Catalog& catalog,
                        std::optional<TubeSection> default_section = std::nullopt);
MountConfig parse_mounts(const std::string& text, const Catalog& catalog,
                         std::optional<TubeSection> default_section = std::nullopt,
                         const std::string& source = "<string>");

}  // namespace tradestudy
