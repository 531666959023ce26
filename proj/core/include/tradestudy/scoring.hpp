#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tradestudy/catalog.hpp"

namespace tradestudy {

enum class CriterionName {
  resolution,
  accuracy,
  fov,
  range,
  darkness,
  dust,
  power,
  implementation_ease,
  lightness,
  affordability,
};

inline constexpr std::array<CriterionName, 10> kAllCriteria = {
    CriterionName::resolution, CriterionName::accuracy,  CriterionName::fov,
    CriterionName::range,      CriterionName::darkness,  CriterionName::dust,
    CriterionName::power,      CriterionName::implementation_ease,
    CriterionName::lightness,  CriterionName::affordability,
};

/// requirement: gates eligibility; objective: scored only; both: gates and scored.
/// Every criterion contributes to the weighted sum regardless of kind.
enum class CriterionKind { requirement, objective, both };

enum class Stage { far_field, near_field, modality_overview };

std::string_view to_string(CriterionName c);
std::string_view to_string(CriterionKind k);
std::string_view to_string(Stage s);
/// Human-readable column header ("Field of View").
std::string_view display_name(CriterionName c);
CriterionName parse_criterion(std::string_view text);
CriterionKind parse_criterion_kind(std::string_view text);
Stage parse_stage(std::string_view text);

inline bool gates(CriterionKind k) { return k != CriterionKind::objective; }

enum class Comparison { less, less_equal, greater, greater_equal };

struct Threshold {
  Comparison op = Comparison::greater_equal;
  double value = 0.0;

  bool matches(double x) const;
  bool operator==(const Threshold&) const = default;
};

/// Maps a raw quantity to {low, mid, high}. Values matching neither
/// threshold are mid. Either threshold may be absent.
struct ThresholdBand {
  std::optional<Threshold> high;
  std::optional<Threshold> low;

  Ordinal classify(double x) const;
  bool operator==(const ThresholdBand&) const = default;
};

/// Throws ValidationError if the high and low regions can overlap or point
/// in inconsistent directions.
void validate(const ThresholdBand& band, const std::string& where);

/// Binning rule for one criterion. Categorical rules pass an already-ordinal
/// sensor field through unchanged (darkness, dust, implementation ease).
/// Resolution carries a second band for scan patterns (channel count)
/// because pixel grids and scan patterns are not commensurable.
struct BinRule {
  bool categorical = false;
  ThresholdBand band;
  std::optional<ThresholdBand> scan_channels;

  bool operator==(const BinRule&) const = default;
};

struct Criterion {
  CriterionName name = CriterionName::resolution;
  CriterionKind kind = CriterionKind::objective;
  int weight = 0;
  BinRule bins;

  bool operator==(const Criterion&) const = default;
};

/// A recorded judgment that replaces the binned score of one sensor on one
/// criterion.
struct ScoreOverride {
  std::string sensor_id;
  CriterionName criterion = CriterionName::resolution;
  Ordinal score = Ordinal::low;
  std::string reason;

  bool operator==(const ScoreOverride&) const = default;
};

struct ScoringProfile {
  std::string name;
  Stage stage = Stage::far_field;
  std::vector<Criterion> criteria;
  std::vector<ScoreOverride> overrides;
  /// Representative device per modality for modality_table.
  std::map<Modality, std::string> exemplars;

  const Criterion& criterion(CriterionName c) const;
  Criterion& criterion(CriterionName c);
  bool operator==(const ScoringProfile&) const = default;
};

/// Throws ValidationError unless all ten criteria appear exactly once with
/// non-negative weights and consistent bands.
void validate(const ScoringProfile& profile);

ScoringProfile load_profile(const std::string& path);
ScoringProfile parse_profile(const std::string& text, const std::string& source = "<string>");
std::string dump_profile(const ScoringProfile& profile);

/// Raw quantity a threshold criterion bins on, in the criterion's unit.
std::optional<double> raw_quantity(const SensorRecord& sensor, CriterionName criterion);

/// Ordinal score from the binning rule alone; nullopt when the spec field
/// the rule needs is absent.
std::optional<Ordinal> bin_score(const SensorRecord& sensor, const Criterion& criterion);

enum class ScoreSource { binned, override };

struct MatrixRow {
  std::string sensor_id;
  std::vector<Ordinal> scores;  // parallel to DecisionMatrix::criteria
  std::vector<ScoreSource> sources;
  long weighted_sum = 0;
  bool eligible = true;
  std::vector<CriterionName> failing;

  int score(std::size_t criterion_index) const { return score_of(scores[criterion_index]); }
};

struct DecisionMatrix {
  std::string profile_name;
  Stage stage = Stage::far_field;
  std::vector<CriterionName> criteria;
  std::vector<int> weights;
  std::vector<MatrixRow> rows;      // catalog order
  std::vector<std::string> ranking; // weighted sum descending, ties by catalog order

  const MatrixRow& row(std::string_view sensor_id) const;
  std::optional<std::size_t> column(CriterionName c) const;
};

/// Error listing every (sensor, criterion) pair with neither a binned score
/// nor an override.
class UnresolvedScoreError : public Error {
 public:
  explicit UnresolvedScoreError(std::vector<std::pair<std::string, CriterionName>> missing);
  const std::vector<std::pair<std::string, CriterionName>>& missing() const { return missing_; }

 private:
  std::vector<std::pair<std::string, CriterionName>> missing_;
};

/// Scores every catalog sensor under the profile. Overrides come from the
/// profile plus `extra` (extra wins on conflict) and always replace the
/// binned value. Override ids must resolve in the catalog.
DecisionMatrix score_matrix(const Catalog& catalog, const ScoringProfile& profile,
                            const std::vector<ScoreOverride>& extra = {});

/// Flags sensors scoring 0 on any gating criterion. Scores are retained.
DecisionMatrix gate_requirements(DecisionMatrix matrix, const ScoringProfile& profile);

/// Profile overrides whose sensor is present in `catalog`. Lets callers score
/// a sub-catalog with a profile written for a larger one.
std::vector<ScoreOverride> overrides_for(const Catalog& catalog, const ScoringProfile& profile);

struct ModalityRow {
  Modality modality;
  std::string exemplar_id;
  std::vector<Ordinal> scores;  // parallel to ModalityTable::criteria
};

struct ModalityTable {
  std::vector<CriterionName> criteria;
  std::vector<ModalityRow> rows;
};

/// One row per requested modality, profiled by its exemplar device: the
/// profile's declared exemplar when present in the catalog, otherwise the
/// first catalog sensor of that modality. Empty `modalities` means every
/// modality present in the catalog, in catalog order.
ModalityTable modality_table(const Catalog& catalog, const ScoringProfile& profile,
                             std::vector<Modality> modalities = {});

}  // namespace tradestudy
