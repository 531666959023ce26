#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"

using namespace tradestudy;

int main(int argc, char** argv) {
  CLI::App app{"Sensor trade-study engine: decision matrices, mass budgets, coverage and suite selection"};
  app.require_subcommand(1);

  cli::Options opts;
  std::string format = "table";
  std::optional<std::string> preset;
  std::vector<std::string> modalities;
  std::vector<std::string> sweep;
  std::string sweep_placement = "body";
  std::optional<std::string> stage_policy;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format: table, csv or md")
        ->check(CLI::IsMember({"table", "csv", "md"}));
    sub->add_option("--preset", preset, "Bundled fixture set")->check(CLI::IsMember({"paper"}));
    sub->add_option("--catalog", opts.catalog, "Sensor catalog (YAML)");
  };
  auto with_mission = [&](CLI::App* sub) { sub->add_option("--mission", opts.mission, "Mission constants (YAML)"); };

  auto* evaluate = app.add_subcommand("evaluate", "Score a catalog under one or more profiles");
  common(evaluate);
  evaluate->add_option("--profile", opts.profiles, "Scoring profile; repeatable");
  evaluate->add_option("--modality", modalities, "Only score sensors of this modality; repeatable");

  auto* budget = app.add_subcommand("budget", "Mass, moment and pulloff budget");
  common(budget);
  with_mission(budget);
  budget->add_option("--distal-mass", opts.distal_mass_kg, "Proposed distal sensor mass (kg)");
  budget->add_option("--body-mass", opts.body_mass_kg, "Proposed body sensor mass (kg)");

  auto* coverage = app.add_subcommand("coverage", "Section coverage and stage hand-off");
  common(coverage);
  with_mission(coverage);
  coverage->add_option("--mounts", opts.mounts, "Mount preset (YAML)");

  auto add_select_options = [&](CLI::App* sub) {
    sub->add_option("--rules", opts.rules, "Placement rules (YAML)");
    sub->add_flag("--redundancy", opts.redundancy, "Add a body slot and require two dust-tolerant modalities");
    sub->add_option("--stage-policy", stage_policy, "strict or allow_marginal")
        ->check(CLI::IsMember({"strict", "allow_marginal"}));
    sub->add_option("--sweep", sweep, "Weight sweep: <criterion> <min> <max>")->expected(3);
    sub->add_option("--sweep-placement", sweep_placement, "body, distal or all")
        ->check(CLI::IsMember({"body", "distal", "all"}));
  };
  auto* select = app.add_subcommand("select", "Choose the best feasible sensor suite");
  common(select);
  with_mission(select);
  add_select_options(select);

  auto* report = app.add_subcommand("report", "Every report above in one document");
  common(report);
  with_mission(report);
  report->add_option("--profile", opts.profiles, "Scoring profile; repeatable");
  report->add_option("--mounts", opts.mounts, "Mount preset (YAML)");
  report->add_option("--distal-mass", opts.distal_mass_kg, "Proposed distal sensor mass (kg)");
  report->add_option("--body-mass", opts.body_mass_kg, "Proposed body sensor mass (kg)");
  add_select_options(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  }

  cli::CommandResult result;
  try {
    opts.preset_paper = preset.has_value();
    opts.format = parse_table_format(format);
    for (const auto& m : modalities) opts.modalities.push_back(parse_modality(m));
    if (stage_policy) opts.stage_policy = parse_stage_policy(*stage_policy);
    if (!sweep.empty()) {
      cli::Options::Sweep s{parse_criterion(sweep[0]), std::stoi(sweep[1]), std::stoi(sweep[2]), std::nullopt};
      if (sweep_placement != "all") s.placement = parse_placement(sweep_placement);
      opts.sweep = s;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kInputError;
  }

  if (evaluate->parsed()) result = cli::cmd_evaluate(opts);
  else if (budget->parsed()) result = cli::cmd_budget(opts);
  else if (coverage->parsed()) result = cli::cmd_coverage(opts);
  else if (select->parsed()) result = cli::cmd_select(opts);
  else result = cli::cmd_report(opts);

  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
