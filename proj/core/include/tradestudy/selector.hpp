#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tradestudy/catalog.hpp"
#include "tradestudy/errors.hpp"
#include "tradestudy/geometry.hpp"
#include "tradestudy/scoring.hpp"

namespace tradestudy {

enum class Placement { body, distal };
std::string_view to_string(Placement p);
Placement parse_placement(std::string_view text);

struct PlacementRule {
  Placement placement = Placement::body;
  /// nullopt: derived from the mission (body fraction or moment limit).
  std::optional<double> mass_budget_kg;
  ScoringProfile profile;
  int max_sensors = 1;
  /// Empty means every modality is allowed.
  std::vector<Modality> modalities;
};

/// How strictly the body/distal range hand-off is enforced.
enum class StagePolicy { strict, allow_marginal };
std::string_view to_string(StagePolicy p);
StagePolicy parse_stage_policy(std::string_view text);

struct SelectionRules {
  std::vector<PlacementRule> placements;  // at most one per Placement
  StagePolicy stage_policy = StagePolicy::allow_marginal;
  /// Body suite must span >= 2 modalities that score >= 1 on dust.
  bool require_redundancy = false;
  /// Cap on tied alternatives reported by select_best.
  std::size_t max_ties = 16;
};

/// Throws ValidationError on duplicate placements, max_sensors < 1 or a
/// negative budget.
void validate(const SelectionRules& rules);

/// Paper-style redundancy: one more body slot and the redundancy constraint.
SelectionRules with_redundancy(SelectionRules rules);

struct PlacementSelection {
  Placement placement = Placement::body;
  std::vector<std::string> sensor_ids;  // sorted
  double mass_kg = 0.0;
  double budget_kg = 0.0;
  double price_usd = 0.0;
  long score = 0;
};

struct SuiteSolution {
  std::vector<PlacementSelection> placements;  // rule order
  long aggregate_score = 0;
  double total_mass_kg = 0.0;
  double total_price_usd = 0.0;
  /// Present when both placements exist: the best hand-off over all
  /// (body, distal) sensor pairs.
  std::optional<StagePlan> stage_plan;
  std::optional<std::pair<std::string, std::string>> stage_pair;
  bool feasible = false;
  std::vector<std::string> infeasibility;

  const PlacementSelection* placement(Placement p) const;
  std::vector<std::string> sensors(Placement p) const;
};

/// Strict weak order: score desc, total price asc, total mass asc, then
/// sensor ids placement by placement.
bool better(const SuiteSolution& a, const SuiteSolution& b);

/// Score, evaluate and check one explicit suite. `ids` is parallel to
/// rules.placements; ids may be aliases. Never throws for infeasibility.
SuiteSolution evaluate_suite(const Catalog& catalog, const SelectionRules& rules,
                             const MissionConfig& mission,
                             const std::vector<std::vector<std::string>>& ids);

inline constexpr double kEnumerationLimit = 1e6;

class SearchLimitError : public Error {
 public:
  using Error::Error;
};

class NoFeasibleSuiteError : public InfeasibleError {
 public:
  explicit NoFeasibleSuiteError(std::vector<std::string> constraints);
  const std::vector<std::string>& constraints() const { return constraints_; }

 private:
  std::vector<std::string> constraints_;
};

/// Every feasible suite, best first. Throws SearchLimitError when the
/// combination count exceeds kEnumerationLimit.
std::vector<SuiteSolution> enumerate_suites(const Catalog& catalog, const SelectionRules& rules,
                                            const MissionConfig& mission);

struct Selection {
  SuiteSolution best;
  /// Feasible suites with the same aggregate score that lost on the
  /// tie-break, one placement varied at a time, best first.
  std::vector<SuiteSolution> ties;
  /// Candidates dropped because their profile could not score them.
  std::vector<std::string> unscorable;
};

/// Exact branch-and-bound search. Throws NoFeasibleSuiteError listing the
/// binding constraints.
Selection select_best(const Catalog& catalog, const SelectionRules& rules,
                      const MissionConfig& mission);

struct SensitivityRow {
  int weight = 0;
  std::optional<SuiteSolution> selected;  // nullopt when infeasible
  std::size_t tie_count = 0;
  bool changed_from_previous = false;
  bool differs_from_baseline = false;
};

struct SensitivityReport {
  CriterionName criterion = CriterionName::resolution;
  std::optional<Placement> placement;  // nullopt: every placement
  std::optional<SuiteSolution> baseline;
  std::vector<SensitivityRow> rows;
};

/// Re-runs select_best for each integer weight in [min_weight, max_weight]
/// on the criterion, in the given placement's profile or all profiles.
SensitivityReport sensitivity_report(const Catalog& catalog, const SelectionRules& rules,
                                     const MissionConfig& mission, CriterionName criterion,
                                     int min_weight, int max_weight,
                                     std::optional<Placement> placement = Placement::body);

// Rules file IO (YAML). Profile paths resolve relative to the rules file.
SelectionRules load_rules(const std::string& path);
SelectionRules parse_rules(const std::string& text, const std::string& base_dir = ".",
                           const std::string& source = "<string>");

}  // namespace tradestudy
