#pragma once

// Command implementations behind the `tradestudy` executable. Each command
// returns its rendered output and exit status instead of printing, so tests
// can call them directly.

#include <optional>
#include <string>
#include <vector>

#include "tradestudy/scoring.hpp"
#include "tradestudy/selector.hpp"
#include "tradestudy/table.hpp"

namespace tradestudy::cli {

enum ExitCode : int { kOk = 0, kInfeasible = 1, kInputError = 2 };

struct CommandResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

struct Options {
  bool preset_paper = false;
  TableFormat format = TableFormat::text;
  std::optional<std::string> catalog;
  std::optional<std::string> mission;
  std::vector<std::string> profiles;
  std::optional<std::string> rules;
  std::optional<std::string> mounts;
  std::vector<Modality> modalities;  // evaluate: restrict rows
  std::optional<double> distal_mass_kg;
  std::optional<double> body_mass_kg;
  bool redundancy = false;
  std::optional<StagePolicy> stage_policy;
  struct Sweep {
    CriterionName criterion;
    int min_weight;
    int max_weight;
    std::optional<Placement> placement;
  };
  std::optional<Sweep> sweep;
};

/// Directory holding the bundled fixtures.
std::string data_dir();

CommandResult cmd_evaluate(const Options& options);
CommandResult cmd_budget(const Options& options);
CommandResult cmd_coverage(const Options& options);
CommandResult cmd_select(const Options& options);
CommandResult cmd_report(const Options& options);

// Table builders, exposed for tests. They only format values the core
// operations already computed.
Table matrix_table(const DecisionMatrix& matrix, const std::vector<std::string>& unscorable = {});
Table modality_table_view(const ModalityTable& table);

}  // namespace tradestudy::cli
