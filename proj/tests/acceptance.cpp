// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "cli.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "tradestudy/budget.hpp"
#include "tradestudy/geometry.hpp"
#include "tradestudy/selector.hpp"

using namespace tradestudy;
using namespace tradestudy::test;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

using Ids = std::vector<std::string>;

Outcome table_reproduction() {
  Outcome o;
  const auto catalog = load_catalog(data_path("paper_catalog.yaml"));
  const auto far = load_profile(data_path("far_field.profile"));
  const auto near = load_profile(data_path("near_field.profile"));
  const std::map<std::string, long> far_sums{
      {"RSBPearl", 23}, {"VLP-16", 26}, {"Cygbot", 20}, {"iPhone12", 23}, {"OS1-32", 26}};
  const std::map<std::string, long> near_sums{
      {"FireflyS", 14}, {"D435i", 24}, {"D605i", 20}, {"Zed2", 23}, {"OAK-D", 18}};
  auto score = [](const Catalog& c, ScoringProfile p) {
    p.overrides = overrides_for(c, p);
    return score_matrix(c, p);
  };
  const auto fm = score(only(catalog, {Modality::lidar}), far);
  const auto nm = score(only(catalog, {Modality::camera2d, Modality::camera3d}), near);
  for (const auto& [id, sum] : far_sums)
    o.check(fm.row(id).weighted_sum == sum, fmt::format("far {} = {}", id, fm.row(id).weighted_sum));
  for (const auto& [id, sum] : near_sums) {
    const auto& row = nm.row(catalog.canonical_id(id));
    o.check(row.weighted_sum == sum, fmt::format("near {} = {}", id, row.weighted_sum));
  }
  return o;
}

Outcome budget_reproduction() {
  Outcome o;
  const auto& m = paper_mission();
  const double boom = mission_boom_mass(m);
  o.check(std::fabs(boom - 0.62) < 1e-12, fmt::format("boom {}", boom));
  o.check(std::fabs(boom * m.boom_count - 4.96) < 1e-12, fmt::format("booms {}", boom * m.boom_count));
  const double body = mission_body_budget(m);
  o.check(std::fabs(body - 1.988) < 1e-12 && std::fabs(body - 2.0) <= 0.02, fmt::format("body {}", body));
  const double distal = mission_distal_budget(m);
  o.check(std::fabs(distal - 0.7295) < 5e-5 && std::fabs(distal - 0.72) <= 0.01, fmt::format("distal {}", distal));
  return o;
}

Outcome vertical_fov() {
  Outcome o;
  const double v = effective_vertical_fov(30.0, 45.0, true);
  o.check(v == 120.0, fmt::format("vfov {}", v));
  return o;
}

Outcome stage_plans() {
  Outcome o;
  const auto& c = paper_catalog();
  const auto a = stage_plan(c.at("VLP-16"), c.at("D435i"), 10.0);
  o.check(a.blind_band.has_value(), "VLP-16 + D435i: no blind band");
  if (a.blind_band) {
    o.check(a.blind_band->first == 3.0, fmt::format("band start {}", a.blind_band->first));
    o.check(std::fabs(a.blind_band->second - 10.0 / 3.0) < 1e-12, fmt::format("band end {}", a.blind_band->second));
  }
  o.check(a.status != StageStatus::valid, "VLP-16 + D435i reported valid");
  const auto b = stage_plan(c.at("VLP-16"), c.at("Zed2"), 10.0);
  o.check(b.valid(), "VLP-16 + Zed2 not valid");
  o.check(std::fabs(b.overlap_m - (20.0 - 10.0 / 3.0)) < 1e-12, fmt::format("overlap {}", b.overlap_m));
  return o;
}

Outcome selection() {
  Outcome o;
  cli::Options opts;
  opts.preset_paper = true;
  const auto r = cli::cmd_select(opts);
  o.check(r.exit_code == cli::kOk, "select --preset paper exit " + std::to_string(r.exit_code));

  const auto sel = select_best(paper_catalog(), paper_rules(), paper_mission());
  o.check(sel.best.sensors(Placement::body) == Ids{"VLP-16"}, "body is not VLP-16");
  o.check(sel.best.sensors(Placement::distal) == Ids{"D435i"}, "distal is not D435i");
  bool tie = false;
  for (const auto& t : sel.ties)
    tie |= t.sensors(Placement::body) == Ids{"OS1-32"} && t.total_price_usd > sel.best.total_price_usd;
  o.check(tie, "OS1-32 tie not reported as lost on price");
  o.check(r.out.find("OS1-32") != std::string::npos, "tie missing from the select report");

  const auto red = select_best(paper_catalog(), with_redundancy(paper_rules()), paper_mission());
  const auto body = red.best.sensors(Placement::body);
  bool has_radar = false, has_vlp = false;
  for (const auto& id : body) {
    has_radar |= paper_catalog().at(id).modality == Modality::radar;
    has_vlp |= id == "VLP-16";
  }
  o.check(has_vlp && has_radar, "redundant body suite lacks VLP-16 + radar");
  o.check(red.best.sensors(Placement::distal) == Ids{"D435i"}, "redundant distal is not D435i");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  Gen g(2024);
  for (int i = 0; i < 200; ++i) {
    const auto c = g.catalog(g.integer(1, 12));
    const auto r = g.rules(3, 2);
    const auto m = g.mission();
    const auto ref = oracle::brute_force(c, r, m);
    std::optional<long> got;
    try {
      got = select_best(c, r, m).best.aggregate_score;
    } catch (const NoFeasibleSuiteError&) {
    }
    o.check(got == ref.best_score, fmt::format("catalog {}: select {} vs exhaustive {}", i,
                                               got ? std::to_string(*got) : "none",
                                               ref.best_score ? std::to_string(*ref.best_score) : "none"));
  }
  return o;
}

Outcome invariants() {
  Outcome o;
  Gen g(7);

  // Argmax under uniform weight scaling.
  for (int i = 0; i < 100; ++i) {
    const auto c = g.catalog(g.integer(2, 10));
    auto p = g.profile();
    const auto base = score_matrix(c, p);
    const int k = g.integer(2, 9);
    for (auto& cr : p.criteria) cr.weight *= k;
    const auto scaled = score_matrix(c, p);
    o.check(base.ranking.front() == scaled.ranking.front(), fmt::format("argmax changed, profile {}", i));
    o.check(base.ranking == scaled.ranking, fmt::format("ranking changed, profile {}", i));
  }

  // Weighted-sum monotonicity in each weight.
  for (int i = 0; i < 100; ++i) {
    const auto c = g.catalog(5);
    auto p = g.profile();
    const auto before = score_matrix(c, p);
    p.criteria[static_cast<std::size_t>(g.integer(0, 9))].weight += 1;
    const auto after = score_matrix(c, p);
    for (std::size_t r = 0; r < before.rows.size(); ++r)
      o.check(after.rows[r].weighted_sum >= before.rows[r].weighted_sum, fmt::format("monotonicity, case {}", i));
  }

  // Footprint area scales with r squared.
  for (int i = 0; i < 100; ++i) {
    const auto s = g.sensor("X");
    const double r = g.uniform(0.1, 50.0);
    const double ratio = footprint_at_range(s, 2 * r).area_mm2 / footprint_at_range(s, r).area_mm2;
    o.check(std::fabs(ratio - 4.0) <= 1e-9, fmt::format("footprint ratio {}", ratio));
  }

  // Distal budget is the fixed point of the margined moment limit.
  for (int i = 0; i < 100; ++i) {
    const double crit = g.uniform(30, 120), margin = g.uniform(0, 0.9), grip = g.uniform(0, 0.5);
    const double boom = g.uniform(0.1, 1.5), grav = g.uniform(1, 10), len = g.uniform(1, 10);
    const double m = max_distal_sensor_mass(crit, margin, grip, boom, grav, len);
    if (m <= 0) continue;
    const double moment = shoulder_moment(m, grip, boom, grav, len) * (1 + margin);
    o.check(std::fabs(moment - crit) / crit <= 1e-9, fmt::format("fixed point error {}", (moment - crit) / crit));
  }

  // Coverage against 0.1 degree ray sampling, where a half-degree FOV change
  // does not flip the answer.
  for (int i = 0; i < 100; ++i) {
    TubeSection t{g.uniform(2, 60), g.uniform(2, 300), 0, 0};
    t.body_height_m = g.uniform(0.05, 0.95) * t.depth_m;
    t.body_lateral_m = g.uniform(-0.45, 0.45) * t.width_m;
    std::vector<Mount> mounts;
    for (int k = g.integer(1, 3); k > 0; --k) {
      auto s = g.sensor("M");
      s.fov->vertical_deg = g.uniform(5.0, 170.0);
      mounts.push_back({s, g.uniform(-80.0, 80.0), g.coin(), g.coin()});
    }
    auto widen = [&](double d) {
      auto out = mounts;
      for (auto& m : out) m.sensor.fov->vertical_deg = *m.sensor.fov->vertical_deg + d;
      return section_coverage(out, t, 10.0);
    };
    const auto lib = section_coverage(mounts, t, 10.0);
    const auto narrow = widen(-0.5), wide = widen(0.5);
    const auto ref = oracle::sample_coverage(mounts, t);
    for (std::size_t s = 0; s < 4; ++s) {
      if (narrow.surfaces[s].in_view == wide.surfaces[s].in_view)
        o.check(lib.surfaces[s].in_view == ref[s].in_view, fmt::format("coverage config {} surface {}", i, s));
      if (narrow.surfaces[s].visible == wide.surfaces[s].visible)
        o.check(lib.surfaces[s].visible == ref[s].visible, fmt::format("visibility config {} surface {}", i, s));
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
    double limit_s;  // 0: untimed
  };
  const std::vector<Criterion> criteria{
      {1, "decision-matrix sums reproduce the reference table", table_reproduction, 1.0},
      {2, "mass budgets reproduce the reference figures", budget_reproduction, 0},
      {3, "tilted spinning LiDAR sweeps 120 degrees", vertical_fov, 0},
      {4, "stage hand-off flags the blind band", stage_plans, 0},
      {5, "paper preset selects the reference suite", selection, 0},
      {6, "branch-and-bound matches exhaustive search on 200 catalogs", oracle_equivalence, 30.0},
      {7, "invariant suites", invariants, 0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0) out.check(secs < c.limit_s, fmt::format("took {:.3f} s (limit {} s)", secs, c.limit_s));
    std::cout << fmt::format("{} criterion {}: {} ({:.3f} s)\n", out.pass ? "PASS" : "FAIL", c.number, c.name, secs);
    for (std::size_t i = 0; i < out.failures.size() && i < 5; ++i) std::cout << "    " << out.failures[i] << "\n";
    failed += out.pass ? 0 : 1;
  }
  return failed;
}
