#include "tradestudy/scoring.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace tradestudy {

namespace {

struct CriterionInfo {
  CriterionName name;
  std::string_view key;
  std::string_view display;
};

constexpr CriterionInfo kCriterionInfo[] = {
    {CriterionName::resolution, "resolution", "Resolution"},
    {CriterionName::accuracy, "accuracy", "Accuracy"},
    {CriterionName::fov, "fov", "Field of View"},
    {CriterionName::range, "range", "Range"},
    {CriterionName::darkness, "darkness", "Robustness to Darkness"},
    {CriterionName::dust, "dust", "Robustness to Dust"},
    {CriterionName::power, "power", "Power Efficiency"},
    {CriterionName::implementation_ease, "implementation_ease", "Implementation Ease"},
    {CriterionName::lightness, "lightness", "Lightness and Compactness"},
    {CriterionName::affordability, "affordability", "Affordability"},
};

const CriterionInfo& info(CriterionName c) {
  for (const auto& i : kCriterionInfo)
    if (i.name == c) return i;
  throw Error("unknown criterion");
}

bool points_up(Comparison op) { return op == Comparison::greater || op == Comparison::greater_equal; }
bool inclusive(Comparison op) { return op == Comparison::less_equal || op == Comparison::greater_equal; }

}  // namespace

std::string_view to_string(CriterionName c) { return info(c).key; }
std::string_view display_name(CriterionName c) { return info(c).display; }

std::string_view to_string(CriterionKind k) {
  switch (k) {
    case CriterionKind::requirement: return "requirement";
    case CriterionKind::objective: return "objective";
    case CriterionKind::both: return "both";
  }
  return "?";
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::far_field: return "far_field";
    case Stage::near_field: return "near_field";
    case Stage::modality_overview: return "modality_overview";
  }
  return "?";
}

CriterionName parse_criterion(std::string_view text) {
  for (const auto& i : kCriterionInfo)
    if (i.key == text) return i.name;
  throw ParseError(fmt::format("unknown criterion '{}'", text));
}

CriterionKind parse_criterion_kind(std::string_view text) {
  for (auto k : {CriterionKind::requirement, CriterionKind::objective, CriterionKind::both})
    if (to_string(k) == text) return k;
  throw ParseError(fmt::format("unknown criterion kind '{}'", text));
}

Stage parse_stage(std::string_view text) {
  for (auto s : {Stage::far_field, Stage::near_field, Stage::modality_overview})
    if (to_string(s) == text) return s;
  throw ParseError(fmt::format("unknown stage '{}'", text));
}

bool Threshold::matches(double x) const {
  switch (op) {
    case Comparison::less: return x < value;
    case Comparison::less_equal: return x <= value;
    case Comparison::greater: return x > value;
    case Comparison::greater_equal: return x >= value;
  }
  return false;
}

Ordinal ThresholdBand::classify(double x) const {
  if (high && high->matches(x)) return Ordinal::high;
  if (low && low->matches(x)) return Ordinal::low;
  return Ordinal::mid;
}

void validate(const ThresholdBand& band, const std::string& where) {
  if (!band.high || !band.low) return;
  const Threshold& hi = *band.high;
  const Threshold& lo = *band.low;
  if (points_up(hi.op) == points_up(lo.op))
    throw ValidationError(where, "bins", "high and low thresholds must point in opposite directions");
  // Higher-is-better: low region (-inf, lo] must end before high region [hi, inf).
  const bool disjoint = points_up(hi.op)
                            ? (lo.value < hi.value || (lo.value == hi.value && !(inclusive(lo.op) && inclusive(hi.op))))
                            : (hi.value < lo.value || (lo.value == hi.value && !(inclusive(lo.op) && inclusive(hi.op))));
  if (!disjoint) throw ValidationError(where, "bins", "high and low regions overlap");
}

const Criterion& ScoringProfile::criterion(CriterionName c) const {
  for (const auto& crit : criteria)
    if (crit.name == c) return crit;
  throw ValidationError(name, std::string(to_string(c)), "criterion missing from profile");
}

Criterion& ScoringProfile::criterion(CriterionName c) {
  return const_cast<Criterion&>(std::as_const(*this).criterion(c));
}

void validate(const ScoringProfile& profile) {
  std::set<CriterionName> seen;
  for (const auto& c : profile.criteria) {
    const std::string field(to_string(c.name));
    if (!seen.insert(c.name).second)
      throw ValidationError(profile.name, field, "criterion listed twice");
    if (c.weight < 0) throw ValidationError(profile.name, field, "weight must be >= 0");
    if (!c.bins.categorical) {
      validate(c.bins.band, profile.name + "." + field);
      if (c.bins.scan_channels) validate(*c.bins.scan_channels, profile.name + "." + field);
    }
  }
  for (auto c : kAllCriteria)
    if (!seen.contains(c))
      throw ValidationError(profile.name, std::string(to_string(c)), "criterion missing from profile");
}

std::optional<double> raw_quantity(const SensorRecord& s, CriterionName c) {
  switch (c) {
    case CriterionName::resolution:
      if (s.resolution)
        if (const auto* px = std::get_if<PixelGrid>(&*s.resolution)) return px->megapixels();
      return std::nullopt;
    case CriterionName::accuracy: return s.percent_error();
    case CriterionName::fov:
      if (s.fov) return s.fov->widest_deg();
      return std::nullopt;
    case CriterionName::range: return s.range_max_m;
    case CriterionName::power: return s.power_w;
    case CriterionName::lightness: return s.mass_g;
    case CriterionName::affordability: return s.price_usd;
    case CriterionName::darkness:
    case CriterionName::dust:
    case CriterionName::implementation_ease: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Ordinal> bin_score(const SensorRecord& s, const Criterion& criterion) {
  if (criterion.bins.categorical) {
    switch (criterion.name) {
      case CriterionName::darkness: return s.darkness_robust;
      case CriterionName::dust: return s.dust_robust;
      case CriterionName::implementation_ease: return s.implementation_ease;
      default: return std::nullopt;
    }
  }
  if (criterion.name == CriterionName::resolution && s.resolution &&
      std::holds_alternative<ScanPattern>(*s.resolution)) {
    const auto& scan = std::get<ScanPattern>(*s.resolution);
    if (!scan.channels || !criterion.bins.scan_channels) return std::nullopt;
    return criterion.bins.scan_channels->classify(static_cast<double>(*scan.channels));
  }
  const auto raw = raw_quantity(s, criterion.name);
  if (!raw) return std::nullopt;
  return criterion.bins.band.classify(*raw);
}

const MatrixRow& DecisionMatrix::row(std::string_view sensor_id) const {
  for (const auto& r : rows)
    if (r.sensor_id == sensor_id) return r;
  throw ValidationError(std::string(sensor_id), "id", "no row in decision matrix");
}

std::optional<std::size_t> DecisionMatrix::column(CriterionName c) const {
  for (std::size_t i = 0; i < criteria.size(); ++i)
    if (criteria[i] == c) return i;
  return std::nullopt;
}

UnresolvedScoreError::UnresolvedScoreError(std::vector<std::pair<std::string, CriterionName>> missing)
    : Error([&] {
        std::string msg = "unresolved scores (no binned value and no override):";
        for (const auto& [id, c] : missing) msg += fmt::format(" {}/{}", id, to_string(c));
        return msg;
      }()),
      missing_(std::move(missing)) {}

std::vector<ScoreOverride> overrides_for(const Catalog& catalog, const ScoringProfile& profile) {
  std::vector<ScoreOverride> out;
  for (const auto& o : profile.overrides)
    if (catalog.find(o.sensor_id)) out.push_back(o);
  return out;
}

DecisionMatrix score_matrix(const Catalog& catalog, const ScoringProfile& profile,
                            const std::vector<ScoreOverride>& extra) {
  DecisionMatrix m;
  m.profile_name = profile.name;
  m.stage = profile.stage;
  for (const auto& c : profile.criteria) {
    m.criteria.push_back(c.name);
    m.weights.push_back(c.weight);
  }

  // (canonical id, criterion) -> score; later entries win.
  std::map<std::pair<std::string, CriterionName>, Ordinal> forced;
  auto record = [&](const ScoreOverride& o) {
    forced[{catalog.canonical_id(o.sensor_id), o.criterion}] = o.score;
  };
  for (const auto& o : profile.overrides) record(o);
  for (const auto& o : extra) record(o);

  std::vector<std::pair<std::string, CriterionName>> missing;
  for (const auto& sensor : catalog.sensors()) {
    MatrixRow row;
    row.sensor_id = sensor.id;
    for (const auto& c : profile.criteria) {
      if (auto it = forced.find({sensor.id, c.name}); it != forced.end()) {
        row.scores.push_back(it->second);
        row.sources.push_back(ScoreSource::override);
      } else if (auto binned = bin_score(sensor, c)) {
        row.scores.push_back(*binned);
        row.sources.push_back(ScoreSource::binned);
      } else {
        missing.emplace_back(sensor.id, c.name);
        row.scores.push_back(Ordinal::low);
        row.sources.push_back(ScoreSource::binned);
      }
      row.weighted_sum += static_cast<long>(score_of(row.scores.back())) * c.weight;
    }
    m.rows.push_back(std::move(row));
  }
  if (!missing.empty()) throw UnresolvedScoreError(std::move(missing));

  std::vector<std::size_t> order(m.rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return m.rows[a].weighted_sum > m.rows[b].weighted_sum;
  });
  for (auto i : order) m.ranking.push_back(m.rows[i].sensor_id);
  return m;
}

DecisionMatrix gate_requirements(DecisionMatrix matrix, const ScoringProfile& profile) {
  for (auto& row : matrix.rows) {
    row.eligible = true;
    row.failing.clear();
    for (std::size_t i = 0; i < matrix.criteria.size(); ++i) {
      const auto& crit = profile.criterion(matrix.criteria[i]);
      if (gates(crit.kind) && row.scores[i] == Ordinal::low) {
        row.eligible = false;
        row.failing.push_back(crit.name);
      }
    }
  }
  return matrix;
}

ModalityTable modality_table(const Catalog& catalog, const ScoringProfile& profile,
                             std::vector<Modality> modalities) {
  if (modalities.empty()) {
    for (const auto& s : catalog.sensors())
      if (std::find(modalities.begin(), modalities.end(), s.modality) == modalities.end())
        modalities.push_back(s.modality);
  }

  std::vector<SensorRecord> exemplars;
  for (auto mod : modalities) {
    const SensorRecord* pick = nullptr;
    if (auto it = profile.exemplars.find(mod); it != profile.exemplars.end()) {
      pick = catalog.find(it->second);
      if (pick && pick->modality != mod)
        throw ValidationError(profile.name, "exemplars",
                              fmt::format("'{}' is not a {} sensor", it->second, to_string(mod)));
    }
    if (!pick) {
      for (const auto& s : catalog.sensors())
        if (s.modality == mod) {
          pick = &s;
          break;
        }
    }
    if (!pick)
      throw ValidationError("catalog", "modality",
                            fmt::format("no exemplar sensor for modality '{}'", to_string(mod)));
    exemplars.push_back(*pick);
  }

  const Catalog subset(exemplars);
  ScoringProfile restricted = profile;
  restricted.overrides = overrides_for(subset, profile);
  const DecisionMatrix m = score_matrix(subset, restricted);
  ModalityTable table;
  table.criteria = m.criteria;
  for (std::size_t i = 0; i < modalities.size(); ++i)
    table.rows.push_back({modalities[i], m.rows[i].sensor_id, m.rows[i].scores});
  return table;
}

}  // namespace tradestudy
