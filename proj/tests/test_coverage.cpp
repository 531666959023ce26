#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "support.hpp"
#include "tradestudy/geometry.hpp"

using namespace tradestudy;
using namespace tradestudy::test;

namespace {

Mount mount(const std::string& id, double tilt, bool spinning, bool faces_left = false) {
  return {paper_catalog().at(id), tilt, spinning, faces_left};
}

std::vector<Mount> paper_mounts() {
  return {mount("VLP-16", 45.0, true), mount("VLP-16", -45.0, true)};
}

std::vector<Mount> widen(std::vector<Mount> mounts, double delta_deg) {
  for (auto& m : mounts) m.sensor.fov->vertical_deg = *m.sensor.fov->vertical_deg + delta_deg;
  return mounts;
}

}  // namespace

TEST(Coverage, TiltedSpinningPairSeesWholeSlice) {
  const auto mounts = paper_mounts();
  const auto r = section_coverage(mounts, TubeSection::centered(30, 30), 10.0);
  EXPECT_EQ(r.effective_vfov_deg, (std::vector<double>{120.0, 120.0}));
  EXPECT_TRUE(r.all_visible());
  // 60 degrees of elevation reach the floor and ceiling 15 m away at most 30 degrees off the normal.
  EXPECT_NEAR(*r.at(Surface::floor).nearest_m, 15.0 / std::cos(std::numbers::pi / 6.0), 1e-9);
  EXPECT_NEAR(*r.at(Surface::ceiling).nearest_m, 17.3205080757, 1e-9);
  EXPECT_NEAR(*r.at(Surface::left_wall).nearest_m, 15.0, 1e-12);
  EXPECT_FALSE(r.at(Surface::left_wall).within_boom_reach);
}

TEST(Coverage, ReadsPresetFile) {
  const auto cfg = load_mounts(data_path("paper_mounts.yaml"), paper_catalog());
  ASSERT_EQ(cfg.mounts.size(), 2u);
  EXPECT_DOUBLE_EQ(cfg.section.depth_m, 30.0);
  EXPECT_DOUBLE_EQ(cfg.section.body_height_m, 15.0);
  ASSERT_TRUE(cfg.stage.has_value());
  EXPECT_EQ(cfg.stage->first, "VLP-16");
  EXPECT_TRUE(section_coverage(cfg.mounts, cfg.section, 10.0).all_visible());
}

TEST(Coverage, UntiltedLidarMissesCeiling) {
  const std::vector<Mount> mounts{mount("VLP-16", 0.0, true)};
  const auto r = section_coverage(mounts, TubeSection::centered(30, 30), 10.0);
  EXPECT_FALSE(r.at(Surface::ceiling).in_view);
  EXPECT_FALSE(r.at(Surface::floor).in_view);
  EXPECT_TRUE(r.at(Surface::left_wall).visible);
  EXPECT_TRUE(r.at(Surface::right_wall).visible);
  EXPECT_TRUE(r.walls_visible());
  EXPECT_FALSE(r.all_visible());
}

TEST(Coverage, WideTubeWallsBeyondRange) {
  const auto mounts = paper_mounts();
  const auto r = section_coverage(mounts, TubeSection::centered(30, 300), 10.0);
  for (auto s : {Surface::left_wall, Surface::right_wall}) {
    EXPECT_TRUE(r.at(s).in_view);
    EXPECT_FALSE(r.at(s).visible);
    EXPECT_TRUE(r.at(s).beyond_range);
    EXPECT_NEAR(*r.at(s).nearest_m, 150.0, 1e-9);
  }
  EXPECT_TRUE(r.at(Surface::floor).visible);
}

TEST(Coverage, FullSphereSensorSeesEverything) {
  auto m = mount("VLP-16", 0.0, true);
  m.sensor.fov->vertical_deg = 180.0;
  const std::vector<Mount> mounts{m};
  const auto r = section_coverage(mounts, TubeSection::centered(30, 30), 10.0);
  EXPECT_TRUE(r.all_visible());
  EXPECT_DOUBLE_EQ(*r.at(Surface::ceiling).nearest_m, 15.0);
}

TEST(Coverage, StaticMountSeesOneSide) {
  const std::vector<Mount> right{mount("D435i", 0.0, false)};
  const auto r = section_coverage(right, TubeSection::centered(4, 4), 10.0);
  EXPECT_TRUE(r.at(Surface::right_wall).visible);
  EXPECT_FALSE(r.at(Surface::left_wall).in_view);

  const std::vector<Mount> left{mount("D435i", 0.0, false, true)};
  const auto l = section_coverage(left, TubeSection::centered(4, 4), 10.0);
  EXPECT_TRUE(l.at(Surface::left_wall).visible);
  EXPECT_FALSE(l.at(Surface::right_wall).in_view);
}

TEST(Coverage, OffCenterBody) {
  TubeSection t = TubeSection::centered(10, 20);
  t.body_height_m = 2.0;
  t.body_lateral_m = 8.0;
  const std::vector<Mount> mounts{mount("VLP-16", 0.0, true)};
  const auto r = section_coverage(mounts, t, 10.0);
  EXPECT_NEAR(*r.at(Surface::right_wall).nearest_m, 2.0, 1e-12);
  EXPECT_TRUE(r.at(Surface::right_wall).within_boom_reach);
  EXPECT_NEAR(*r.at(Surface::left_wall).nearest_m, 18.0, 1e-12);
}

TEST(Coverage, InvalidInput) {
  const auto mounts = paper_mounts();
  TubeSection outside = TubeSection::centered(10, 10);
  outside.body_height_m = 10.0;
  EXPECT_THROW(section_coverage(mounts, outside, 10.0), ValidationError);
  EXPECT_THROW(section_coverage(mounts, TubeSection::centered(0, 10), 10.0), ValidationError);
  const std::vector<Mount> no_vfov{mount("iPhone12", 0.0, false)};
  EXPECT_THROW(section_coverage(no_vfov, TubeSection::centered(10, 10), 10.0), ValidationError);
}

TEST(CoverageProperty, AgreesWithRaySampling) {
  Gen g(51);
  int compared = 0;
  for (int i = 0; i < 100; ++i) {
    TubeSection t{g.uniform(2, 60), g.uniform(2, 300), 0, 0};
    t.body_height_m = g.uniform(0.05, 0.95) * t.depth_m;
    t.body_lateral_m = g.uniform(-0.45, 0.45) * t.width_m;
    std::vector<Mount> mounts;
    for (int k = g.integer(1, 3); k > 0; --k) {
      auto s = g.sensor(fmt::format("M{}", k));
      s.fov->vertical_deg = g.uniform(5.0, 170.0);
      mounts.push_back({s, g.uniform(-80.0, 80.0), g.coin(), g.coin()});
    }
    const auto lib = section_coverage(mounts, t, 10.0);
    const auto narrow = section_coverage(widen(mounts, -0.5), t, 10.0);
    const auto wide = section_coverage(widen(mounts, 0.5), t, 10.0);
    const auto ref = oracle::sample_coverage(mounts, t);
    for (std::size_t s = 0; s < 4; ++s) {
      const auto& a = lib.surfaces[s];
      // Only compare where a half-degree change in FOV leaves the answer alone.
      if (narrow.surfaces[s].in_view == wide.surfaces[s].in_view) {
        EXPECT_EQ(a.in_view, ref[s].in_view) << "config " << i << " surface " << s;
        ++compared;
      }
      if (narrow.surfaces[s].visible == wide.surfaces[s].visible)
        EXPECT_EQ(a.visible, ref[s].visible) << "config " << i << " surface " << s;
      if (a.in_view && narrow.surfaces[s].in_view) {
        EXPECT_GE(ref[s].nearest, *a.nearest_m - 1e-9);
        EXPECT_LE(ref[s].nearest, *narrow.surfaces[s].nearest_m + 1e-9);
      }
    }
  }
  EXPECT_GT(compared, 300);
}
