#include "tradestudy/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

namespace tradestudy {

namespace {

constexpr std::pair<Modality, std::string_view> kModalityNames[] = {
    {Modality::lidar, "lidar"},       {Modality::camera2d, "camera2d"},
    {Modality::camera3d, "camera3d"}, {Modality::radar, "radar"},
    {Modality::sonar, "sonar"},       {Modality::thermal, "thermal"},
};

constexpr std::pair<Ordinal, std::string_view> kOrdinalNames[] = {
    {Ordinal::low, "low"}, {Ordinal::mid, "mid"}, {Ordinal::high, "high"}};

void require(bool ok, const std::string& id, const char* field, const std::string& why) {
  if (!ok) throw ValidationError(id, field, why);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::string_view to_string(Modality m) {
  for (const auto& [value, name] : kModalityNames)
    if (value == m) return name;
  return "?";
}

std::string_view to_string(Ordinal o) {
  for (const auto& [value, name] : kOrdinalNames)
    if (value == o) return name;
  return "?";
}

Modality parse_modality(std::string_view text) {
  for (const auto& [value, name] : kModalityNames)
    if (name == text) return value;
  throw ParseError(fmt::format("unknown modality '{}'", text));
}

Ordinal parse_ordinal(std::string_view text) {
  for (const auto& [value, name] : kOrdinalNames)
    if (name == text) return value;
  throw ParseError(fmt::format("unknown ordinal '{}' (expected low, mid or high)", text));
}

double FieldOfView::widest_deg() const {
  return std::max(horizontal_deg, vertical_deg.value_or(0.0));
}

bool SensorRecord::answers_to(std::string_view name_or_alias) const {
  if (id == name_or_alias) return true;
  return std::find(aliases.begin(), aliases.end(), name_or_alias) != aliases.end();
}

std::optional<double> SensorRecord::percent_error() const {
  if (!accuracy) return std::nullopt;
  if (const auto* pct = std::get_if<PercentError>(&*accuracy)) return pct->percent;
  const auto& abs = std::get<AbsoluteError>(*accuracy);
  if (!range_max_m) return std::nullopt;
  return abs.millimeters / (*range_max_m * 1000.0) * 100.0;
}

void validate(const SensorRecord& s) {
  const std::string& id = s.id.empty() ? std::string("<unnamed>") : s.id;
  require(!s.id.empty(), id, "id", "must be non-empty");
  require(finite_positive(s.mass_g), id, "mass_g", "must be > 0");
  require(std::isfinite(s.price_usd) && s.price_usd >= 0.0, id, "price_usd", "must be >= 0");

  if (s.range_min_m) require(std::isfinite(*s.range_min_m) && *s.range_min_m >= 0.0, id,
                             "range_min_m", "must be >= 0");
  // Unbounded range (+inf) is allowed; it models an ideal sensor.
  if (s.range_max_m) require(*s.range_max_m > 0.0, id, "range_max_m", "must be > 0");
  if (s.range_min_m && s.range_max_m)
    require(*s.range_min_m < *s.range_max_m, id, "range_min_m", "must be < range_max_m");
  if (s.power_w) require(finite_positive(*s.power_w), id, "power_w", "must be > 0");

  if (s.fov) {
    auto in_range = [](double deg) { return std::isfinite(deg) && deg > 0.0 && deg <= 360.0; };
    require(in_range(s.fov->horizontal_deg), id, "fov.horizontal_deg", "must be in (0, 360]");
    if (s.fov->vertical_deg)
      require(in_range(*s.fov->vertical_deg), id, "fov.vertical_deg", "must be in (0, 360]");
    if (s.fov->diagonal_deg)
      require(in_range(*s.fov->diagonal_deg), id, "fov.diagonal_deg", "must be in (0, 360]");
  }

  if (s.resolution) {
    if (const auto* grid = std::get_if<PixelGrid>(&*s.resolution)) {
      require(grid->width > 0 && grid->height > 0, id, "resolution.pixels",
              "width and height must be > 0");
    } else {
      const auto& scan = std::get<ScanPattern>(*s.resolution);
      require(scan.channels || scan.horizontal_deg || scan.vertical_deg, id, "resolution.scan",
              "needs at least one of channels, horizontal_deg, vertical_deg");
      if (scan.channels) require(*scan.channels > 0, id, "resolution.scan.channels", "must be > 0");
      if (scan.horizontal_deg)
        require(finite_positive(*scan.horizontal_deg), id, "resolution.scan.horizontal_deg",
                "must be > 0");
      if (scan.vertical_deg)
        require(finite_positive(*scan.vertical_deg), id, "resolution.scan.vertical_deg",
                "must be > 0");
    }
  }

  if (s.accuracy) {
    if (const auto* pct = std::get_if<PercentError>(&*s.accuracy)) {
      require(std::isfinite(pct->percent) && pct->percent >= 0.0, id, "accuracy.percent",
              "must be >= 0");
      if (pct->at_range_m)
        require(finite_positive(*pct->at_range_m), id, "accuracy.at_range_m", "must be > 0");
    } else {
      const double mm = std::get<AbsoluteError>(*s.accuracy).millimeters;
      require(std::isfinite(mm) && mm >= 0.0, id, "accuracy.absolute_mm", "must be >= 0");
    }
  }

  require(s.dimensions_mm.empty() || s.dimensions_mm.size() == 2 || s.dimensions_mm.size() == 3,
          id, "dimensions_mm", "must list 2 or 3 extents");
  for (double d : s.dimensions_mm)
    require(finite_positive(d), id, "dimensions_mm", "extents must be > 0");
}

Catalog::Catalog(std::vector<SensorRecord> sensors, bool allow_empty)
    : sensors_(std::move(sensors)) {
  if (sensors_.empty() && !allow_empty)
    throw ValidationError("catalog", "sensors", "must contain at least one sensor");
  std::set<std::string, std::less<>> names;
  for (const auto& s : sensors_) {
    validate(s);
    if (!names.insert(s.id).second)
      throw ValidationError(s.id, "id", "duplicate sensor id or alias");
    for (const auto& alias : s.aliases)
      if (!names.insert(alias).second)
        throw ValidationError(s.id, "aliases", fmt::format("alias '{}' collides", alias));
  }
}

const SensorRecord* Catalog::find(std::string_view id) const {
  auto it = std::find_if(sensors_.begin(), sensors_.end(),
                         [&](const SensorRecord& s) { return s.answers_to(id); });
  return it == sensors_.end() ? nullptr : &*it;
}

const SensorRecord& Catalog::at(std::string_view id) const {
  if (const auto* s = find(id)) return *s;
  throw ValidationError(std::string(id), "id", "no such sensor in catalog");
}

const std::string& Catalog::canonical_id(std::string_view id) const { return at(id).id; }

void validate(const MissionConfig& m) {
  const std::string subject = "mission";
  require(finite_positive(m.boom_length_m), subject, "boom_length_m", "must be > 0");
  require(m.boom_count > 0, subject, "boom_count", "must be > 0");
  require(finite_positive(m.boom_linear_density_g_per_m), subject, "boom_linear_density_g_per_m",
          "must be > 0");
  require(finite_positive(m.gravity), subject, "gravity", "must be > 0");
  require(finite_positive(m.gripper_mass_kg), subject, "gripper_mass_kg", "must be > 0");
  require(finite_positive(m.gripper_pulloff_n), subject, "gripper_pulloff_n", "must be > 0");
  require(finite_positive(m.critical_buckling_moment_nm), subject, "critical_buckling_moment_nm",
          "must be > 0");
  require(m.buckling_margin > 0.0 && m.buckling_margin < 1.0, subject, "buckling_margin",
          "must be in (0, 1)");
  require(finite_positive(m.overall_mass_budget_kg), subject, "overall_mass_budget_kg",
          "must be > 0");
  require(finite_positive(m.instrument_mass_kg), subject, "instrument_mass_kg", "must be > 0");
  require(m.body_sensor_fraction > 0.0 && m.body_sensor_fraction < 1.0, subject,
          "body_sensor_fraction", "must be in (0, 1)");
  require(finite_positive(m.tube_depth_m), subject, "tube_depth_m", "must be > 0");
  require(finite_positive(m.tube_width_m), subject, "tube_width_m", "must be > 0");
}

}  // namespace tradestudy
