#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "tradestudy/budget.hpp"
#include "tradestudy/catalog.hpp"
#include "tradestudy/geometry.hpp"

#ifndef TRADESTUDY_DATA_DIR
#define TRADESTUDY_DATA_DIR "data"
#endif

namespace tradestudy::cli {

namespace {

// Masses of the preset's proposed suite: one D435i per boom tip, and two
// pucks plus two radars on the body.
constexpr double kPaperDistalMassKg = 0.26;
constexpr double kPaperBodyMassKg = 1.7;

std::string fixture(const char* name) { return (std::filesystem::path(data_dir()) / name).string(); }

std::string resolve(const std::optional<std::string>& given, bool preset, const char* preset_file,
                    const char* flag) {
  if (given) return *given;
  if (preset) return fixture(preset_file);
  throw ValidationError("options", flag, "required unless --preset paper is given");
}

std::string kg(double v) { return fmt::format("{:.4f}", v); }
std::string meters(double v) { return fmt::format("{:.3f}", v); }
std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string render_all(const std::vector<Table>& tables, TableFormat format) {
  std::string out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) out += "\n";
    out += render(tables[i], format);
  }
  return out;
}

/// Runs a command body, mapping exceptions onto exit codes.
template <typename F>
CommandResult guarded(F&& body) {
  CommandResult r;
  try {
    body(r);
  } catch (const NoFeasibleSuiteError& e) {
    r.exit_code = kInfeasible;
    r.err += "infeasible: no suite satisfies the rules\n";
    for (const auto& c : e.constraints()) r.err += "  - " + c + "\n";
  } catch (const InfeasibleError& e) {
    r.exit_code = kInfeasible;
    r.err += fmt::format("infeasible: {}\n", e.what());
  } catch (const std::exception& e) {
    r.exit_code = kInputError;
    r.err += fmt::format("error: {}\n", e.what());
  }
  return r;
}

/// Scores the catalog rows of the allowed modalities, dropping sensors the
/// profile has no score for.
std::pair<DecisionMatrix, std::vector<std::string>> score_rows(const Catalog& catalog,
                                                               const ScoringProfile& profile,
                                                               const std::vector<Modality>& modalities) {
  std::vector<SensorRecord> rows;
  for (const auto& s : catalog.sensors())
    if (modalities.empty() ||
        std::find(modalities.begin(), modalities.end(), s.modality) != modalities.end())
      rows.push_back(s);

  std::vector<std::string> unscorable;
  for (;;) {
    const Catalog sub(rows, true);
    ScoringProfile restricted = profile;
    restricted.overrides = overrides_for(sub, profile);
    try {
      return {gate_requirements(score_matrix(sub, restricted), restricted), unscorable};
    } catch (const UnresolvedScoreError& e) {
      std::set<std::string> bad;
      for (const auto& [id, c] : e.missing()) bad.insert(id);
      std::erase_if(rows, [&](const SensorRecord& s) { return bad.contains(s.id); });
      unscorable.insert(unscorable.end(), bad.begin(), bad.end());
    }
  }
}

std::vector<Table> evaluate_tables(const Options& o) {
  std::vector<Table> tables;
  if (o.preset_paper && o.profiles.empty()) {
    const Catalog catalog = load_catalog(resolve(o.catalog, true, "paper_catalog.yaml", "--catalog"));
    const auto far = load_profile(fixture("far_field.profile"));
    const auto near = load_profile(fixture("near_field.profile"));
    auto [fm, fu] = score_rows(catalog, far, {Modality::lidar});
    auto [nm, nu] = score_rows(catalog, near, {Modality::camera2d, Modality::camera3d});
    tables.push_back(matrix_table(fm, fu));
    tables.push_back(matrix_table(nm, nu));
    const Catalog exemplars = load_catalog(fixture("modality_exemplars.yaml"));
    tables.push_back(modality_table_view(modality_table(exemplars, load_profile(fixture("modality.profile")))));
    return tables;
  }
  if (o.profiles.empty()) throw ValidationError("options", "--profile", "required unless --preset paper is given");
  const Catalog catalog = load_catalog(resolve(o.catalog, o.preset_paper, "paper_catalog.yaml", "--catalog"));
  for (const auto& path : o.profiles) {
    const auto profile = load_profile(path);
    if (profile.stage == Stage::modality_overview) {
      tables.push_back(modality_table_view(modality_table(catalog, profile, o.modalities)));
    } else {
      auto [m, u] = score_rows(catalog, profile, o.modalities);
      tables.push_back(matrix_table(m, u));
    }
  }
  return tables;
}

std::vector<Table> budget_tables(const Options& o, bool& feasible) {
  const MissionConfig mission = load_mission(resolve(o.mission, o.preset_paper, "paper_mission.yaml", "--mission"));
  const double distal = o.distal_mass_kg.value_or(o.preset_paper ? kPaperDistalMassKg : 0.0);
  const double body = o.body_mass_kg.value_or(o.preset_paper ? kPaperBodyMassKg : 0.0);
  const BudgetReport r = budget_report(mission, distal, body);

  Table t;
  t.title = "Mass budget";
  t.header = {"Quantity", "Value", "Unit"};
  t.numeric = {false, true, false};
  t.add_row({"boom mass (each)", kg(r.boom_mass_kg), "kg"});
  t.add_row({fmt::format("boom mass ({} booms)", mission.boom_count), kg(r.total_boom_mass_kg), "kg"});
  t.add_row({"body sensor budget", kg(r.body_sensor_budget_kg), "kg"});
  t.add_row({"body sensor mass", kg(r.body_sensor_mass_kg), "kg"});
  t.add_row({"distal sensor budget", kg(r.distal_sensor_budget_kg), "kg"});
  t.add_row({"distal sensor mass", kg(r.distal_sensor_mass_kg), "kg"});
  t.add_row({"shoulder moment", fmt::format("{:.3f}", r.shoulder_moment_nm), "N m"});
  t.add_row({"margined moment limit", fmt::format("{:.3f}", r.margined_moment_limit_nm), "N m"});
  t.add_row({"gripper pulloff capacity", fmt::format("{:.3f}", r.pulloff_capacity_n), "N"});
  t.add_row({"weight on grippers", fmt::format("{:.3f}", r.weight_on_grippers_n), "N"});
  t.add_row({"feasible", yes_no(r.feasible), ""});
  // Rounded figures as usually quoted, next to the exact ones.
  t.notes.push_back(fmt::format("booms total {} kg (~{:.0f} kg rounded); body budget {} kg (~{:.0f} kg)",
                                kg(r.total_boom_mass_kg), r.total_boom_mass_kg, kg(r.body_sensor_budget_kg),
                                r.body_sensor_budget_kg));
  for (const auto& reason : r.infeasibility) t.notes.push_back("infeasible: " + reason);
  feasible = r.feasible;
  return {t};
}

Table stage_table(const StagePlan& plan, const std::string& far, const std::string& near) {
  Table t;
  t.title = "Stage plan";
  t.header = {"Far", "Near", "Near-field max (m)", "Far-field min (m)", "Far-field max (m)",
              "Far credit max (m)", "Overlap (m)", "Blind band (m)", "Status"};
  t.numeric = {false, false, true, true, true, true, true, false, false};
  t.add_row({far, near, meters(plan.near_field_max_m), meters(plan.far_field_min_m),
             meters(plan.far_field_max_m), meters(plan.far_credit_max_m), meters(plan.overlap_m),
             plan.blind_band ? fmt::format("{}-{}", meters(plan.blind_band->first), meters(plan.blind_band->second))
                             : "none",
             std::string(to_string(plan.status))});
  t.notes = plan.notes;
  return t;
}

std::vector<Table> coverage_tables(const Options& o, bool& ok) {
  const MissionConfig mission = load_mission(resolve(o.mission, o.preset_paper, "paper_mission.yaml", "--mission"));
  const Catalog catalog = load_catalog(resolve(o.catalog, o.preset_paper, "paper_catalog.yaml", "--catalog"));
  const MountConfig cfg = load_mounts(resolve(o.mounts, o.preset_paper, "paper_mounts.yaml", "--mounts"), catalog,
                                      TubeSection::centered(mission.tube_depth_m, mission.tube_width_m));
  const CoverageReport report = section_coverage(cfg.mounts, cfg.section, mission.boom_length_m);

  std::vector<Table> tables;
  Table mounts;
  mounts.title = fmt::format("Mounts (section {} m deep x {} m wide)", cfg.section.depth_m, cfg.section.width_m);
  mounts.header = {"Sensor", "Tilt (deg)", "Spinning", "Effective vFOV (deg)"};
  mounts.numeric = {false, true, false, true};
  for (std::size_t i = 0; i < cfg.mounts.size(); ++i)
    mounts.add_row({cfg.mounts[i].sensor.id, fmt::format("{}", cfg.mounts[i].tilt_deg),
                    yes_no(cfg.mounts[i].spinning), fmt::format("{}", report.effective_vfov_deg[i])});
  tables.push_back(mounts);

  Table cov;
  cov.title = "Section coverage";
  cov.header = {"Surface", "In view", "Visible", "Nearest (m)", "Within boom reach"};
  cov.numeric = {false, false, false, true, false};
  for (const auto& s : report.surfaces)
    cov.add_row({std::string(to_string(s.surface)), yes_no(s.in_view), yes_no(s.visible),
                 s.nearest_m ? meters(*s.nearest_m) : "-", yes_no(s.within_boom_reach)});
  for (const auto& s : report.surfaces)
    if (s.beyond_range) cov.notes.push_back(fmt::format("{} is in view but beyond sensor range", to_string(s.surface)));
  const Strategy strategy =
      strategy_recommend(mission.boom_length_m, TubeSection::centered(mission.tube_depth_m, mission.tube_width_m));
  cov.notes.push_back(fmt::format("recommended strategy: {}", to_string(strategy)));
  tables.push_back(cov);

  ok = report.all_visible();
  if (cfg.stage) {
    const auto plan = stage_plan(catalog.at(cfg.stage->first), catalog.at(cfg.stage->second), mission.boom_length_m);
    tables.push_back(stage_table(plan, cfg.stage->first, cfg.stage->second));
    ok = ok && plan.status != StageStatus::invalid;
  }
  return tables;
}

std::string ids(const std::vector<std::string>& v) { return v.empty() ? "-" : fmt::format("{}", fmt::join(v, " + ")); }

/// Which tie-break key separated an alternative from the winner.
std::string decided_by(const SuiteSolution& best, const SuiteSolution& alt) {
  if (best.total_price_usd != alt.total_price_usd) return "price";
  if (best.total_mass_kg != alt.total_mass_kg) return "mass";
  return "id";
}

std::vector<Table> select_tables(const Options& o) {
  const MissionConfig mission = load_mission(resolve(o.mission, o.preset_paper, "paper_mission.yaml", "--mission"));
  const Catalog catalog = load_catalog(resolve(o.catalog, o.preset_paper, "paper_catalog.yaml", "--catalog"));
  SelectionRules rules = load_rules(resolve(o.rules, o.preset_paper, "paper_rules.yaml", "--rules"));
  if (o.redundancy) rules = with_redundancy(std::move(rules));
  if (o.stage_policy) rules.stage_policy = *o.stage_policy;

  const Selection sel = select_best(catalog, rules, mission);
  const SuiteSolution& best = sel.best;
  std::vector<Table> tables;

  Table suite;
  suite.title = "Selected suite";
  suite.header = {"Placement", "Sensors", "Score", "Mass (kg)", "Budget (kg)", "Margin (kg)", "Price (USD)"};
  suite.numeric = {false, false, true, true, true, true, true};
  for (const auto& p : best.placements)
    suite.add_row({std::string(to_string(p.placement)), ids(p.sensor_ids), fmt::format("{}", p.score), kg(p.mass_kg),
                   kg(p.budget_kg), kg(p.budget_kg - p.mass_kg), fmt::format("{}", p.price_usd)});
  suite.add_row({"total", "", fmt::format("{}", best.aggregate_score), kg(best.total_mass_kg), "", "",
                 fmt::format("{}", best.total_price_usd)});
  if (!sel.unscorable.empty())
    suite.notes.push_back(fmt::format("not scorable under their placement profile: {}", fmt::join(sel.unscorable, ", ")));
  tables.push_back(suite);

  Table trace;
  trace.title = "Constraint margins";
  trace.header = {"Constraint", "Value", "Limit", "Margin", "Status"};
  trace.numeric = {false, true, true, true, false};
  for (std::size_t i = 0; i < best.placements.size(); ++i) {
    const auto& p = best.placements[i];
    const auto name = to_string(p.placement);
    trace.add_row({fmt::format("{} mass (kg)", name), kg(p.mass_kg), kg(p.budget_kg), kg(p.budget_kg - p.mass_kg), "ok"});
    const int max = rules.placements[i].max_sensors;
    trace.add_row({fmt::format("{} sensor count", name), fmt::format("{}", p.sensor_ids.size()), fmt::format("{}", max),
                   fmt::format("{}", max - static_cast<int>(p.sensor_ids.size())), "ok"});
    trace.add_row({fmt::format("{} requirement gates", name), "", "", "", "pass"});
  }
  if (best.stage_plan)
    trace.add_row({fmt::format("stage overlap {} + {} (m)", best.stage_pair->first, best.stage_pair->second),
                   meters(best.stage_plan->overlap_m), "0.000", meters(best.stage_plan->overlap_m),
                   std::string(to_string(best.stage_plan->status))});
  if (rules.require_redundancy) trace.add_row({"body dust-tolerant modalities", "", "2", "", "ok"});
  if (best.stage_plan) trace.notes = best.stage_plan->notes;
  tables.push_back(trace);

  if (!sel.ties.empty()) {
    Table ties;
    ties.title = fmt::format("Tied alternatives (score {})", best.aggregate_score);
    ties.header = {"Body", "Distal", "Score", "Price (USD)", "Mass (kg)", "Lost on"};
    ties.numeric = {false, false, true, true, true, false};
    for (const auto& t : sel.ties) {
      ties.add_row({ids(t.sensors(Placement::body)), ids(t.sensors(Placement::distal)),
                    fmt::format("{}", t.aggregate_score), fmt::format("{}", t.total_price_usd), kg(t.total_mass_kg),
                    decided_by(best, t)});
    }
    ties.notes.push_back("ties broken by lower total price, then lower total mass, then sensor id");
    tables.push_back(ties);
  }

  if (o.sweep) {
    const auto report = sensitivity_report(catalog, rules, mission, o.sweep->criterion, o.sweep->min_weight,
                                           o.sweep->max_weight, o.sweep->placement);
    Table sweep;
    sweep.title = fmt::format("Sensitivity: {} weight ({})", to_string(o.sweep->criterion),
                              o.sweep->placement ? std::string(to_string(*o.sweep->placement)) : "all placements");
    sweep.header = {"Weight", "Body", "Distal", "Score", "Ties", "Changed", "Differs from baseline"};
    sweep.numeric = {true, false, false, true, true, false, false};
    for (const auto& row : report.rows) {
      if (row.selected)
        sweep.add_row({fmt::format("{}", row.weight), ids(row.selected->sensors(Placement::body)),
                       ids(row.selected->sensors(Placement::distal)), fmt::format("{}", row.selected->aggregate_score),
                       fmt::format("{}", row.tie_count), yes_no(row.changed_from_previous),
                       yes_no(row.differs_from_baseline)});
      else
        sweep.add_row({fmt::format("{}", row.weight), "infeasible", "", "", "", yes_no(row.changed_from_previous),
                       yes_no(row.differs_from_baseline)});
    }
    tables.push_back(sweep);
  }
  return tables;
}

}  // namespace

std::string data_dir() {
  if (const char* env = std::getenv("TRADESTUDY_DATA_DIR")) return env;
  return TRADESTUDY_DATA_DIR;
}

Table matrix_table(const DecisionMatrix& m, const std::vector<std::string>& unscorable) {
  Table t;
  t.title = fmt::format("Decision matrix: {} ({})", m.profile_name, to_string(m.stage));
  t.header.push_back("Sensor");
  for (auto c : m.criteria) t.header.emplace_back(display_name(c));
  t.header.push_back("Weighted Sum");
  t.header.push_back("Gate");
  t.numeric.assign(t.header.size(), true);
  t.numeric.front() = false;
  t.numeric.back() = false;

  std::vector<std::string> weights{"(weight)"};
  for (int w : m.weights) weights.push_back(fmt::format("{}", w));
  weights.push_back("");
  weights.push_back("");
  t.add_row(std::move(weights));

  for (const auto& row : m.rows) {
    std::vector<std::string> cells{row.sensor_id};
    for (std::size_t i = 0; i < row.scores.size(); ++i) cells.push_back(fmt::format("{}", row.score(i)));
    cells.push_back(fmt::format("{}", row.weighted_sum));
    if (row.eligible) {
      cells.push_back("pass");
    } else {
      std::vector<std::string_view> names;
      for (auto c : row.failing) names.push_back(to_string(c));
      cells.push_back(fmt::format("fail: {}", fmt::join(names, " ")));
    }
    t.add_row(std::move(cells));
  }

  if (!m.ranking.empty()) {
    const auto& top = m.row(m.ranking.front());
    std::vector<std::string> tied;
    for (const auto& id : m.ranking)
      if (m.row(id).weighted_sum == top.weighted_sum) tied.push_back(id);
    if (tied.size() > 1)
      t.notes.push_back(fmt::format("top weighted sum {} shared by {}", top.weighted_sum, fmt::join(tied, ", ")));
  }
  if (!unscorable.empty())
    t.notes.push_back(fmt::format("not scored (missing specs and no override): {}", fmt::join(unscorable, ", ")));
  return t;
}

Table modality_table_view(const ModalityTable& mt) {
  Table t;
  t.title = "Modality overview";
  t.header = {"Modality", "Example Device"};
  for (auto c : mt.criteria) t.header.emplace_back(display_name(c));
  t.numeric.assign(t.header.size(), false);
  for (const auto& row : mt.rows) {
    std::vector<std::string> cells{std::string(to_string(row.modality)), row.exemplar_id};
    for (auto s : row.scores) cells.emplace_back(to_string(s));
    t.add_row(std::move(cells));
  }
  return t;
}

CommandResult cmd_evaluate(const Options& o) {
  return guarded([&](CommandResult& r) { r.out = render_all(evaluate_tables(o), o.format); });
}

CommandResult cmd_budget(const Options& o) {
  return guarded([&](CommandResult& r) {
    bool feasible = true;
    r.out = render_all(budget_tables(o, feasible), o.format);
    if (!feasible) r.exit_code = kInfeasible;
  });
}

CommandResult cmd_coverage(const Options& o) {
  return guarded([&](CommandResult& r) {
    bool ok = true;
    r.out = render_all(coverage_tables(o, ok), o.format);
    if (!ok) r.exit_code = kInfeasible;
  });
}

CommandResult cmd_select(const Options& o) {
  return guarded([&](CommandResult& r) { r.out = render_all(select_tables(o), o.format); });
}

CommandResult cmd_report(const Options& o) {
  CommandResult total;
  for (auto* cmd : {&cmd_evaluate, &cmd_budget, &cmd_coverage, &cmd_select}) {
    const CommandResult part = cmd(o);
    if (!total.out.empty() && !part.out.empty()) total.out += "\n";
    total.out += part.out;
    total.err += part.err;
    total.exit_code = std::max(total.exit_code, part.exit_code);
  }
  return total;
}

}  // namespace tradestudy::cli
