#include <benchmark/benchmark.h>

#include "tradestudy/geometry.hpp"

using namespace tradestudy;

namespace {

void BM_SectionCoverage(benchmark::State& state) {
  const auto catalog = load_catalog(std::string(TRADESTUDY_DATA_DIR) + "/paper_catalog.yaml");
  const std::vector<Mount> mounts{{catalog.at("VLP-16"), 45.0, true, false},
                                  {catalog.at("VLP-16"), -45.0, true, false},
                                  {catalog.at("D435i"), 10.0, false, true}};
  const auto tube = TubeSection::centered(30, 30);
  for (auto _ : state) benchmark::DoNotOptimize(section_coverage(mounts, tube, 10.0));
}
BENCHMARK(BM_SectionCoverage);

void BM_StagePlan(benchmark::State& state) {
  const auto catalog = load_catalog(std::string(TRADESTUDY_DATA_DIR) + "/paper_catalog.yaml");
  const auto& far = catalog.at("VLP-16");
  const auto& near = catalog.at("D435i");
  for (auto _ : state) benchmark::DoNotOptimize(stage_plan(far, near, 10.0));
}
BENCHMARK(BM_StagePlan);

}  // namespace
