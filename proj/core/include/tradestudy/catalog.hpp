#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tradestudy/errors.hpp"

namespace tradestudy {

enum class Modality { lidar, camera2d, camera3d, radar, sonar, thermal };

/// Three-level grade shared by raw categorical specs and binned scores.
enum class Ordinal : int { low = 0, mid = 1, high = 2 };

std::string_view to_string(Modality m);
std::string_view to_string(Ordinal o);
Modality parse_modality(std::string_view text);
Ordinal parse_ordinal(std::string_view text);
inline int score_of(Ordinal o) { return static_cast<int>(o); }

struct PixelGrid {
  int width = 0;
  int height = 0;

  double megapixels() const { return static_cast<double>(width) * height / 1.0e6; }
  bool operator==(const PixelGrid&) const = default;
};

/// Scanning sensor resolution. Datasheets quote subsets of these, so every
/// field is optional; at least one must be present.
struct ScanPattern {
  std::optional<int> channels;
  std::optional<double> horizontal_deg;
  std::optional<double> vertical_deg;

  bool operator==(const ScanPattern&) const = default;
};

using Resolution = std::variant<PixelGrid, ScanPattern>;

/// Relative error at a nominal range. When the range is not quoted the
/// sensor's range_max is used as the nominal range.
struct PercentError {
  double percent = 0.0;
  std::optional<double> at_range_m;

  bool operator==(const PercentError&) const = default;
};

struct AbsoluteError {
  double millimeters = 0.0;

  bool operator==(const AbsoluteError&) const = default;
};

using Accuracy = std::variant<PercentError, AbsoluteError>;

struct FieldOfView {
  double horizontal_deg = 0.0;
  std::optional<double> vertical_deg;
  std::optional<double> diagonal_deg;

  double widest_deg() const;
  bool operator==(const FieldOfView&) const = default;
};

/// Raw physical specs of one candidate sensor. Units are fixed per field:
/// meters, watts, grams, millimeters, USD. Absent optionals mean the value
/// is unknown, never zero.
struct SensorRecord {
  std::string id;
  std::vector<std::string> aliases;
  std::string name;
  Modality modality = Modality::lidar;
  std::optional<Resolution> resolution;
  std::optional<Accuracy> accuracy;
  std::optional<FieldOfView> fov;
  std::optional<double> range_min_m;
  std::optional<double> range_max_m;
  std::optional<double> power_w;
  std::optional<Ordinal> darkness_robust;
  std::optional<Ordinal> dust_robust;
  std::optional<Ordinal> implementation_ease;
  double mass_g = 0.0;
  std::vector<double> dimensions_mm;
  double price_usd = 0.0;
  std::string notes;

  bool answers_to(std::string_view name_or_alias) const;
  /// Accuracy as percent error at nominal range, if derivable.
  std::optional<double> percent_error() const;
  double mass_kg() const { return mass_g / 1000.0; }

  bool operator==(const SensorRecord&) const = default;
};

/// Throws ValidationError naming the sensor id and field.
void validate(const SensorRecord& sensor);

class Catalog {
 public:
  Catalog() = default;
  /// Validates every record and id uniqueness (including aliases).
  explicit Catalog(std::vector<SensorRecord> sensors, bool allow_empty = false);

  const std::vector<SensorRecord>& sensors() const noexcept { return sensors_; }
  std::size_t size() const noexcept { return sensors_.size(); }
  bool empty() const noexcept { return sensors_.empty(); }

  /// Lookup by id or alias.
  const SensorRecord* find(std::string_view id) const;
  const SensorRecord& at(std::string_view id) const;
  /// Canonical id for an id or alias; throws ValidationError if unknown.
  const std::string& canonical_id(std::string_view id) const;

  bool operator==(const Catalog&) const = default;

 private:
  std::vector<SensorRecord> sensors_;
};

/// Mission-level constants. Masses in kilograms, lengths in meters.
struct MissionConfig {
  double boom_length_m = 0.0;
  int boom_count = 0;
  double boom_linear_density_g_per_m = 0.0;
  double gravity = 0.0;
  double gripper_mass_kg = 0.0;
  double gripper_pulloff_n = 0.0;
  double critical_buckling_moment_nm = 0.0;
  double buckling_margin = 0.0;
  double overall_mass_budget_kg = 0.0;
  double instrument_mass_kg = 0.0;
  double body_sensor_fraction = 0.0;
  double tube_depth_m = 0.0;
  double tube_width_m = 0.0;

  bool operator==(const MissionConfig&) const = default;
};

void validate(const MissionConfig& mission);

// File IO (YAML). Throws ParseError or ValidationError.
Catalog load_catalog(const std::string& path);
Catalog parse_catalog(const std::string& text, const std::string& source = "<string>");
std::string dump_catalog(const Catalog& catalog);

MissionConfig load_mission(const std::string& path);
MissionConfig parse_mission(const std::string& text, const std::string& source = "<string>");
std::string dump_mission(const MissionConfig& mission);

}  // namespace tradestudy
