#include "tradestudy/selector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "tradestudy/budget.hpp"

namespace tradestudy {

namespace {

// Absorbs rounding in mass sums; budgets are given to a few decimals.
constexpr double kMassTolerance = 1e-9;

struct Candidate {
  std::size_t catalog_index = 0;
  const SensorRecord* sensor = nullptr;
  long score = 0;
  bool eligible = false;
  bool dust_ok = false;
  std::vector<CriterionName> failing;
};

struct PlacementContext {
  const PlacementRule* rule = nullptr;
  double budget = 0.0;
  std::vector<Candidate> candidates;  // catalog order
  std::vector<std::string> unscorable;
  std::vector<std::string> notes;
};

bool modality_allowed(const PlacementRule& rule, Modality m) {
  return rule.modalities.empty() ||
         std::find(rule.modalities.begin(), rule.modalities.end(), m) != rule.modalities.end();
}

double derived_budget(Placement p, const MissionConfig& mission, std::vector<std::string>& notes) {
  try {
    return p == Placement::body ? mission_body_budget(mission) : mission_distal_budget(mission);
  } catch (const InfeasibleError& e) {
    notes.push_back(e.what());
    return 0.0;
  }
}

PlacementContext build_context(const Catalog& catalog, const PlacementRule& rule,
                               const MissionConfig& mission) {
  PlacementContext ctx;
  ctx.rule = &rule;
  ctx.budget = rule.mass_budget_kg ? *rule.mass_budget_kg
                                   : derived_budget(rule.placement, mission, ctx.notes);

  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < catalog.size(); ++i)
    if (modality_allowed(rule, catalog.sensors()[i].modality)) indices.push_back(i);

  // Score the allowed sub-catalog; sensors the profile cannot score are
  // dropped and reported rather than failing the whole selection.
  DecisionMatrix matrix;
  for (;;) {
    std::vector<SensorRecord> subset;
    for (auto i : indices) subset.push_back(catalog.sensors()[i]);
    const Catalog sub(std::move(subset), true);
    ScoringProfile restricted = rule.profile;
    restricted.overrides = overrides_for(sub, rule.profile);
    try {
      matrix = gate_requirements(score_matrix(sub, restricted), restricted);
      break;
    } catch (const UnresolvedScoreError& e) {
      std::set<std::string> bad;
      for (const auto& [id, c] : e.missing()) bad.insert(id);
      std::erase_if(indices, [&](std::size_t i) { return bad.contains(catalog.sensors()[i].id); });
      ctx.unscorable.insert(ctx.unscorable.end(), bad.begin(), bad.end());
    }
  }

  const auto dust_col = matrix.column(CriterionName::dust);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const MatrixRow& row = matrix.rows[k];
    Candidate c;
    c.catalog_index = indices[k];
    c.sensor = &catalog.sensors()[indices[k]];
    c.score = row.weighted_sum;
    c.eligible = row.eligible;
    c.failing = row.failing;
    c.dust_ok = dust_col && row.score(*dust_col) >= 1;
    ctx.candidates.push_back(std::move(c));
  }
  return ctx;
}

bool acceptable(StageStatus s, StagePolicy policy) {
  return s == StageStatus::valid ||
         (s == StageStatus::marginal && policy == StagePolicy::allow_marginal);
}

int status_rank(StageStatus s) {
  switch (s) {
    case StageStatus::valid: return 0;
    case StageStatus::marginal: return 1;
    case StageStatus::invalid: return 2;
  }
  return 3;
}

/// Positions into PlacementContext::candidates, ascending.
using Pick = std::vector<std::size_t>;

class Problem {
 public:
  Problem(const Catalog& catalog, const SelectionRules& rules, const MissionConfig& mission)
      : rules_(rules) {
    validate(rules);
    validate(mission);
    for (std::size_t p = 0; p < rules.placements.size(); ++p) {
      places_.push_back(build_context(catalog, rules.placements[p], mission));
      if (rules.placements[p].placement == Placement::body) body_ = p;
      else distal_ = p;
    }
    if (body_ && distal_) {
      const auto& bc = places_[*body_].candidates;
      const auto& dc = places_[*distal_].candidates;
      plans_.resize(bc.size());
      for (std::size_t i = 0; i < bc.size(); ++i)
        for (const auto& d : dc)
          plans_[i].push_back(stage_plan(*bc[i].sensor, *d.sensor, mission.boom_length_m));
    }
  }

  const std::vector<PlacementContext>& places() const { return places_; }
  std::optional<std::size_t> body() const { return body_; }
  std::optional<std::size_t> distal() const { return distal_; }
  bool has_stage() const { return body_ && distal_; }
  const StagePlan& plan(std::size_t b, std::size_t d) const { return plans_[b][d]; }
  bool pair_ok(std::size_t b, std::size_t d) const {
    return acceptable(plans_[b][d].status, rules_.stage_policy);
  }
  const SelectionRules& rules() const { return rules_; }

  /// Candidates a placement could use at all: eligible and individually
  /// within budget.
  bool usable(std::size_t p, std::size_t c) const {
    const auto& cand = places_[p].candidates[c];
    return cand.eligible && cand.sensor->mass_kg() <= places_[p].budget + kMassTolerance;
  }

  bool redundancy_ok(std::size_t p, const Pick& pick) const {
    if (!rules_.require_redundancy || rules_.placements[p].placement != Placement::body) return true;
    std::set<Modality> mods;
    for (auto c : pick)
      if (places_[p].candidates[c].dust_ok) mods.insert(places_[p].candidates[c].sensor->modality);
    return mods.size() >= 2;
  }

  PlacementSelection selection(std::size_t p, const Pick& pick) const {
    const auto& ctx = places_[p];
    PlacementSelection s;
    s.placement = ctx.rule->placement;
    s.budget_kg = ctx.budget;
    for (auto c : pick) {
      const auto& cand = ctx.candidates[c];
      s.sensor_ids.push_back(cand.sensor->id);
      s.mass_kg += cand.sensor->mass_kg();
      s.price_usd += cand.sensor->price_usd;
      s.score += cand.score;
    }
    std::sort(s.sensor_ids.begin(), s.sensor_ids.end());
    return s;
  }

  SuiteSolution assemble(const std::vector<Pick>& picks) const {
    SuiteSolution sol;
    for (std::size_t p = 0; p < places_.size(); ++p) {
      const auto& ctx = places_[p];
      const auto& pick = picks[p];
      const auto name = to_string(ctx.rule->placement);
      PlacementSelection s = selection(p, pick);
      if (pick.empty())
        sol.infeasibility.push_back(fmt::format("{}: no sensor selected", name));
      if (static_cast<int>(pick.size()) > ctx.rule->max_sensors)
        sol.infeasibility.push_back(
            fmt::format("{}: {} sensors exceed the limit of {}", name, pick.size(), ctx.rule->max_sensors));
      for (auto c : pick) {
        const auto& cand = ctx.candidates[c];
        if (!cand.eligible) {
          std::vector<std::string_view> failing;
          for (auto f : cand.failing) failing.push_back(to_string(f));
          sol.infeasibility.push_back(fmt::format("{}: {} fails the requirement gate on {}", name,
                                                  cand.sensor->id, fmt::join(failing, ", ")));
        }
      }
      if (s.mass_kg > ctx.budget + kMassTolerance)
        sol.infeasibility.push_back(fmt::format("{}: mass {:.4g} kg exceeds budget {:.4g} kg", name,
                                                s.mass_kg, ctx.budget));
      if (!redundancy_ok(p, pick))
        sol.infeasibility.push_back(
            fmt::format("{}: redundancy needs two dust-tolerant modalities", name));
      sol.aggregate_score += s.score;
      sol.total_mass_kg += s.mass_kg;
      sol.total_price_usd += s.price_usd;
      sol.placements.push_back(std::move(s));
    }

    if (has_stage() && !picks[*body_].empty() && !picks[*distal_].empty()) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (auto b : picks[*body_])
        for (auto d : picks[*distal_]) {
          if (!best) { best = {b, d}; continue; }
          const auto& cur = plan(b, d);
          const auto& top = plan(best->first, best->second);
          if (status_rank(cur.status) < status_rank(top.status) ||
              (cur.status == top.status && cur.overlap_m > top.overlap_m))
            best = {b, d};
        }
      sol.stage_plan = plan(best->first, best->second);
      sol.stage_pair = {places_[*body_].candidates[best->first].sensor->id,
                        places_[*distal_].candidates[best->second].sensor->id};
      if (!acceptable(sol.stage_plan->status, rules_.stage_policy))
        sol.infeasibility.push_back(fmt::format("stage plan {} for {} + {}",
                                                to_string(sol.stage_plan->status),
                                                sol.stage_pair->first, sol.stage_pair->second));
    }
    sol.feasible = sol.infeasibility.empty();
    return sol;
  }

  /// Position of a catalog id among a placement's candidates.
  std::optional<std::size_t> position(std::size_t p, std::string_view id) const {
    const auto& cands = places_[p].candidates;
    for (std::size_t c = 0; c < cands.size(); ++c)
      if (cands[c].sensor->id == id) return c;
    return std::nullopt;
  }

 private:
  const SelectionRules& rules_;
  std::vector<PlacementContext> places_;
  std::optional<std::size_t> body_;
  std::optional<std::size_t> distal_;
  std::vector<std::vector<StagePlan>> plans_;
};

/// Same order as `better`, restricted to one placement.
bool placement_better(const PlacementSelection& a, const PlacementSelection& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.price_usd != b.price_usd) return a.price_usd < b.price_usd;
  if (a.mass_kg != b.mass_kg) return a.mass_kg < b.mass_kg;
  return a.sensor_ids < b.sensor_ids;
}

/// Depth-first search over one placement's subsets (size 1..max_sensors,
/// within budget, optionally containing `forced`). Visits every subset whose
/// score could reach `floor()`; branches are cut only when their bound is
/// strictly below it, so equal-score subsets still reach the tie-break.
void search_placement(const Problem& problem, std::size_t p, std::optional<std::size_t> forced,
                      const std::function<long()>& floor,
                      const std::function<void(const Pick&)>& visit) {
  const auto& ctx = problem.places()[p];
  const int max = ctx.rule->max_sensors;
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < ctx.candidates.size(); ++c)
    if (problem.usable(p, c) && c != forced) order.push_back(c);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ctx.candidates[a].score > ctx.candidates[b].score;
  });

  Pick current;
  long score = 0;
  double mass = 0.0;
  if (forced) {
    if (!problem.usable(p, *forced)) return;
    current.push_back(*forced);
    score = ctx.candidates[*forced].score;
    mass = ctx.candidates[*forced].sensor->mass_kg();
  }

  // suffix_top[i][k]: sum of the k best scores in order[i..]; order is sorted
  // so that is a plain prefix sum from i.
  std::vector<long> prefix(order.size() + 1, 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    prefix[i + 1] = prefix[i] + ctx.candidates[order[i]].score;
  auto top = [&](std::size_t from, std::size_t k) {
    return prefix[std::min(order.size(), from + k)] - prefix[from];
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (!current.empty()) {
      Pick sorted = current;
      std::sort(sorted.begin(), sorted.end());
      visit(sorted);
    }
    if (static_cast<int>(current.size()) >= max) return;
    const std::size_t slots = static_cast<std::size_t>(max) - current.size();
    for (std::size_t i = start; i < order.size(); ++i) {
      const auto& cand = ctx.candidates[order[i]];
      const long bound = score + cand.score + top(i + 1, slots - 1);
      if (bound < floor()) break;  // bounds only shrink further down the order
      const double m = cand.sensor->mass_kg();
      if (mass + m > ctx.budget + kMassTolerance) continue;
      current.push_back(order[i]);
      score += cand.score;
      mass += m;
      dfs(i + 1);
      current.pop_back();
      score -= cand.score;
      mass -= m;
    }
  };
  dfs(0);
}

constexpr long kNoFloor = std::numeric_limits<long>::min();

/// Best subset for one placement under the placement order, or nullopt.
std::optional<Pick> best_pick(const Problem& problem, std::size_t p,
                              std::optional<std::size_t> forced) {
  std::optional<Pick> best;
  std::optional<PlacementSelection> best_sel;
  search_placement(
      problem, p, forced, [&] { return best_sel ? best_sel->score : kNoFloor; },
      [&](const Pick& pick) {
        if (!problem.redundancy_ok(p, pick)) return;
        auto sel = problem.selection(p, pick);
        if (!best_sel || placement_better(sel, *best_sel)) {
          best = pick;
          best_sel = std::move(sel);
        }
      });
  return best;
}

std::vector<std::string> binding_constraints(const Problem& problem) {
  std::vector<std::string> out;
  const auto& places = problem.places();
  for (std::size_t p = 0; p < places.size(); ++p) {
    const auto& ctx = places[p];
    const auto name = to_string(ctx.rule->placement);
    for (const auto& n : ctx.notes) out.push_back(fmt::format("{}: {}", name, n));
    if (ctx.candidates.empty()) {
      out.push_back(fmt::format("{}: no scorable candidates of an allowed modality", name));
      continue;
    }
    const auto eligible = std::count_if(ctx.candidates.begin(), ctx.candidates.end(),
                                        [](const Candidate& c) { return c.eligible; });
    if (eligible == 0) {
      out.push_back(fmt::format("{}: none of {} candidates passes the requirement gate", name,
                                ctx.candidates.size()));
      continue;
    }
    std::size_t usable = 0;
    for (std::size_t c = 0; c < ctx.candidates.size(); ++c) usable += problem.usable(p, c);
    if (usable == 0) {
      double lightest = std::numeric_limits<double>::infinity();
      for (const auto& c : ctx.candidates)
        if (c.eligible) lightest = std::min(lightest, c.sensor->mass_kg());
      out.push_back(fmt::format("{}: lightest eligible sensor ({:.4g} kg) exceeds budget {:.4g} kg",
                                name, lightest, ctx.budget));
      continue;
    }
    if (!best_pick(problem, p, std::nullopt))
      out.push_back(fmt::format("{}: redundancy needs two dust-tolerant modalities within budget", name));
  }
  if (out.empty() && problem.has_stage())
    out.push_back(fmt::format("stage plan: no usable (body, distal) pair is {}",
                              problem.rules().stage_policy == StagePolicy::strict
                                  ? "valid"
                                  : "valid or marginal"));
  if (out.empty()) out.push_back("no feasible suite");
  return out;
}

std::vector<Pick> all_picks(const Problem& problem, std::size_t p) {
  std::vector<Pick> out;
  search_placement(problem, p, std::nullopt, [] { return kNoFloor; },
                   [&](const Pick& pick) { out.push_back(pick); });
  return out;
}

double binomial_sum(std::size_t n, int max) {
  double total = 0.0;
  double term = 1.0;
  for (int k = 1; k <= max && static_cast<std::size_t>(k) <= n; ++k) {
    term = term * static_cast<double>(n - k + 1) / k;
    total += term;
  }
  return total;
}

}  // namespace

std::string_view to_string(Placement p) { return p == Placement::body ? "body" : "distal"; }

Placement parse_placement(std::string_view text) {
  if (text == "body") return Placement::body;
  if (text == "distal") return Placement::distal;
  throw ParseError(fmt::format("unknown placement '{}'", text));
}

std::string_view to_string(StagePolicy p) {
  return p == StagePolicy::strict ? "strict" : "allow_marginal";
}

StagePolicy parse_stage_policy(std::string_view text) {
  if (text == "strict") return StagePolicy::strict;
  if (text == "allow_marginal") return StagePolicy::allow_marginal;
  throw ParseError(fmt::format("unknown stage policy '{}'", text));
}

void validate(const SelectionRules& rules) {
  std::set<Placement> seen;
  for (const auto& r : rules.placements) {
    const std::string name(to_string(r.placement));
    if (!seen.insert(r.placement).second)
      throw ValidationError("rules", name, "placement listed twice");
    if (r.max_sensors < 1) throw ValidationError("rules", name + ".max_sensors", "must be >= 1");
    if (r.mass_budget_kg && !(*r.mass_budget_kg >= 0.0 && std::isfinite(*r.mass_budget_kg)))
      throw ValidationError("rules", name + ".mass_budget_kg", "must be >= 0");
    validate(r.profile);
  }
}

SelectionRules with_redundancy(SelectionRules rules) {
  rules.require_redundancy = true;
  for (auto& r : rules.placements)
    if (r.placement == Placement::body) r.max_sensors += 1;
  return rules;
}

const PlacementSelection* SuiteSolution::placement(Placement p) const {
  for (const auto& s : placements)
    if (s.placement == p) return &s;
  return nullptr;
}

std::vector<std::string> SuiteSolution::sensors(Placement p) const {
  const auto* s = placement(p);
  return s ? s->sensor_ids : std::vector<std::string>{};
}

bool better(const SuiteSolution& a, const SuiteSolution& b) {
  if (a.aggregate_score != b.aggregate_score) return a.aggregate_score > b.aggregate_score;
  if (a.total_price_usd != b.total_price_usd) return a.total_price_usd < b.total_price_usd;
  if (a.total_mass_kg != b.total_mass_kg) return a.total_mass_kg < b.total_mass_kg;
  const std::size_t n = std::min(a.placements.size(), b.placements.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.placements[i].sensor_ids != b.placements[i].sensor_ids)
      return a.placements[i].sensor_ids < b.placements[i].sensor_ids;
  return a.placements.size() < b.placements.size();
}

NoFeasibleSuiteError::NoFeasibleSuiteError(std::vector<std::string> constraints)
    : InfeasibleError(fmt::format("no feasible suite: {}", fmt::join(constraints, "; "))),
      constraints_(std::move(constraints)) {}

SuiteSolution evaluate_suite(const Catalog& catalog, const SelectionRules& rules,
                             const MissionConfig& mission,
                             const std::vector<std::vector<std::string>>& ids) {
  const Problem problem(catalog, rules, mission);
  if (ids.size() != rules.placements.size())
    throw ValidationError("suite", "placements", "one id list per rule placement required");

  std::vector<Pick> picks(ids.size());
  std::vector<std::string> unknown;
  for (std::size_t p = 0; p < ids.size(); ++p) {
    for (const auto& raw : ids[p]) {
      const std::string& id = catalog.canonical_id(raw);
      const auto pos = problem.position(p, id);
      if (!pos) {
        unknown.push_back(fmt::format("{}: {} is not a scorable candidate of an allowed modality",
                                      to_string(rules.placements[p].placement), id));
        continue;
      }
      if (std::find(picks[p].begin(), picks[p].end(), *pos) != picks[p].end()) {
        unknown.push_back(fmt::format("{}: {} listed twice", to_string(rules.placements[p].placement), id));
        continue;
      }
      picks[p].push_back(*pos);
    }
    std::sort(picks[p].begin(), picks[p].end());
  }
  SuiteSolution sol = problem.assemble(picks);
  sol.infeasibility.insert(sol.infeasibility.begin(), unknown.begin(), unknown.end());
  sol.feasible = sol.infeasibility.empty();
  return sol;
}

std::vector<SuiteSolution> enumerate_suites(const Catalog& catalog, const SelectionRules& rules,
                                            const MissionConfig& mission) {
  const Problem problem(catalog, rules, mission);
  const auto& places = problem.places();
  if (places.empty()) return {};

  double combinations = 1.0;
  for (std::size_t p = 0; p < places.size(); ++p) {
    std::size_t usable = 0;
    for (std::size_t c = 0; c < places[p].candidates.size(); ++c) usable += problem.usable(p, c);
    combinations *= binomial_sum(usable, places[p].rule->max_sensors);
  }
  if (combinations > kEnumerationLimit)
    throw SearchLimitError(fmt::format("enumeration would visit {:.3g} suites (limit {:.0e})",
                                       combinations, kEnumerationLimit));

  std::vector<std::vector<Pick>> per_place;
  for (std::size_t p = 0; p < places.size(); ++p) per_place.push_back(all_picks(problem, p));

  std::vector<SuiteSolution> out;
  std::vector<Pick> current(places.size());
  std::function<void(std::size_t)> product = [&](std::size_t p) {
    if (p == places.size()) {
      auto sol = problem.assemble(current);
      if (sol.feasible) out.push_back(std::move(sol));
      return;
    }
    for (const auto& pick : per_place[p]) {
      current[p] = pick;
      product(p + 1);
    }
  };
  product(0);
  std::stable_sort(out.begin(), out.end(), better);
  return out;
}

Selection select_best(const Catalog& catalog, const SelectionRules& rules,
                      const MissionConfig& mission) {
  const Problem problem(catalog, rules, mission);
  const auto& places = problem.places();
  if (places.empty()) throw NoFeasibleSuiteError({"rules define no placements"});

  std::optional<std::vector<Pick>> best_picks;
  std::optional<SuiteSolution> best;
  auto offer = [&](std::vector<Pick> picks) {
    auto sol = problem.assemble(picks);
    if (!sol.feasible) return;
    if (!best || better(sol, *best)) {
      best = std::move(sol);
      best_picks = std::move(picks);
    }
  };

  if (!problem.has_stage()) {
    std::vector<Pick> picks;
    for (std::size_t p = 0; p < places.size(); ++p) {
      auto pick = best_pick(problem, p, std::nullopt);
      if (!pick) break;
      picks.push_back(std::move(*pick));
    }
    if (picks.size() == places.size()) offer(std::move(picks));
  } else {
    // The hand-off couples the placements only through one (body, distal)
    // pair. Fixing that pair decouples them, and each side's best subset
    // containing its anchor can be searched independently.
    const std::size_t b = *problem.body();
    const std::size_t d = *problem.distal();
    const auto& bc = places[b].candidates;
    const auto& dc = places[d].candidates;
    std::vector<std::optional<Pick>> body_best(bc.size());
    std::vector<std::optional<Pick>> distal_best(dc.size());
    for (std::size_t i = 0; i < bc.size(); ++i) body_best[i] = best_pick(problem, b, i);
    for (std::size_t j = 0; j < dc.size(); ++j) distal_best[j] = best_pick(problem, d, j);
    for (std::size_t i = 0; i < bc.size(); ++i) {
      if (!body_best[i]) continue;
      for (std::size_t j = 0; j < dc.size(); ++j) {
        if (!distal_best[j] || !problem.pair_ok(i, j)) continue;
        std::vector<Pick> picks(places.size());
        picks[b] = *body_best[i];
        picks[d] = *distal_best[j];
        offer(std::move(picks));
      }
    }
  }

  if (!best) throw NoFeasibleSuiteError(binding_constraints(problem));

  Selection result;
  result.best = *best;
  for (const auto& ctx : places) {
    result.unscorable.insert(result.unscorable.end(), ctx.unscorable.begin(), ctx.unscorable.end());
  }

  // Tied alternatives: vary one placement at a time, keeping the others.
  for (std::size_t p = 0; p < places.size(); ++p) {
    const long target = best->placements[p].score;
    search_placement(problem, p, std::nullopt, [&] { return target; }, [&](const Pick& pick) {
      if (result.ties.size() >= rules.max_ties || pick == (*best_picks)[p]) return;
      if (problem.selection(p, pick).score != target) return;
      auto picks = *best_picks;
      picks[p] = pick;
      auto sol = problem.assemble(picks);
      if (sol.feasible) result.ties.push_back(std::move(sol));
    });
  }
  std::stable_sort(result.ties.begin(), result.ties.end(), better);
  return result;
}

SensitivityReport sensitivity_report(const Catalog& catalog, const SelectionRules& rules,
                                     const MissionConfig& mission, CriterionName criterion,
                                     int min_weight, int max_weight,
                                     std::optional<Placement> placement) {
  if (min_weight < 0) throw ValidationError("sweep", "min_weight", "must be >= 0");
  if (max_weight < min_weight) throw ValidationError("sweep", "max_weight", "must be >= min_weight");
  if (placement &&
      std::none_of(rules.placements.begin(), rules.placements.end(),
                   [&](const PlacementRule& r) { return r.placement == *placement; }))
    throw ValidationError("sweep", "placement",
                          fmt::format("rules have no {} placement", to_string(*placement)));

  auto run = [&](const SelectionRules& r) -> std::pair<std::optional<SuiteSolution>, std::size_t> {
    try {
      auto sel = select_best(catalog, r, mission);
      return {std::move(sel.best), sel.ties.size()};
    } catch (const NoFeasibleSuiteError&) {
      return {std::nullopt, 0};
    }
  };
  auto same = [](const std::optional<SuiteSolution>& a, const std::optional<SuiteSolution>& b) {
    if (!a || !b) return !a && !b;
    if (a->placements.size() != b->placements.size()) return false;
    for (std::size_t i = 0; i < a->placements.size(); ++i)
      if (a->placements[i].sensor_ids != b->placements[i].sensor_ids) return false;
    return true;
  };

  SensitivityReport report;
  report.criterion = criterion;
  report.placement = placement;
  report.baseline = run(rules).first;
  for (int w = min_weight; w <= max_weight; ++w) {
    SelectionRules swept = rules;
    for (auto& r : swept.placements)
      if (!placement || r.placement == *placement) r.profile.criterion(criterion).weight = w;
    SensitivityRow row;
    row.weight = w;
    std::tie(row.selected, row.tie_count) = run(swept);
    row.differs_from_baseline = !same(row.selected, report.baseline);
    row.changed_from_previous = !report.rows.empty() && !same(row.selected, report.rows.back().selected);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace tradestudy
