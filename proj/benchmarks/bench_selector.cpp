#include <random>

#include <benchmark/benchmark.h>

#include "tradestudy/selector.hpp"

using namespace tradestudy;

namespace {

const std::string kData = TRADESTUDY_DATA_DIR;

// Complete random sensors so the far-field bands can score every one.
Catalog random_catalog(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto o = [&] { return static_cast<Ordinal>(std::uniform_int_distribution<int>(0, 2)(rng)); };
  std::vector<SensorRecord> out;
  for (int i = 0; i < n; ++i) {
    SensorRecord s;
    s.id = "S" + std::to_string(i);
    s.name = s.id;
    s.resolution = PixelGrid{static_cast<int>(u(64, 4096)), static_cast<int>(u(48, 3072))};
    s.accuracy = AbsoluteError{u(1, 50)};
    s.fov = FieldOfView{u(30, 360), u(10, 180), std::nullopt};
    s.range_min_m = u(0, 1);
    s.range_max_m = u(2, 120);
    s.power_w = u(0.01, 30);
    s.darkness_robust = o();
    s.dust_robust = o();
    s.implementation_ease = o();
    s.mass_g = u(5, 900);
    s.price_usd = std::floor(u(10, 9000));
    out.push_back(std::move(s));
  }
  return Catalog(std::move(out));
}

SelectionRules random_rules(int slots) {
  const auto far = load_profile(kData + "/far_field.profile");
  const auto near = load_profile(kData + "/near_field.profile");
  SelectionRules r;
  r.placements = {{Placement::body, 2.0, far, slots, {}}, {Placement::distal, 0.7, near, slots, {}}};
  for (auto& p : r.placements) p.profile.overrides.clear();
  return r;
}

void BM_SelectPaper(benchmark::State& state) {
  const auto catalog = load_catalog(kData + "/paper_catalog.yaml");
  const auto mission = load_mission(kData + "/paper_mission.yaml");
  const auto rules = load_rules(kData + "/paper_rules.yaml");
  for (auto _ : state) benchmark::DoNotOptimize(select_best(catalog, rules, mission));
}
BENCHMARK(BM_SelectPaper);

void BM_SelectRandom(benchmark::State& state) {
  const auto catalog = random_catalog(static_cast<int>(state.range(0)), 1);
  const auto mission = load_mission(kData + "/paper_mission.yaml");
  const auto rules = random_rules(3);
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(select_best(catalog, rules, mission));
    } catch (const NoFeasibleSuiteError&) {
    }
  }
}
BENCHMARK(BM_SelectRandom)->Arg(12)->Arg(24)->Arg(48);

void BM_EnumerateRandom(benchmark::State& state) {
  const auto catalog = random_catalog(static_cast<int>(state.range(0)), 1);
  const auto mission = load_mission(kData + "/paper_mission.yaml");
  const auto rules = random_rules(3);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_suites(catalog, rules, mission));
}
BENCHMARK(BM_EnumerateRandom)->Arg(12)->Arg(24);

}  // namespace
