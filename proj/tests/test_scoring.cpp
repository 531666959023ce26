#include <map>
#include <numeric>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "support.hpp"
#include "tradestudy/scoring.hpp"

using namespace tradestudy;
using namespace tradestudy::test;

namespace {

using Row = std::array<int, 10>;  // resolution .. affordability, library order

std::vector<int> scores_of(const MatrixRow& r) {
  std::vector<int> out;
  for (auto o : r.scores) out.push_back(score_of(o));
  return out;
}

long dot(const std::vector<int>& w, const Row& s) {
  long sum = 0;
  for (std::size_t i = 0; i < s.size(); ++i) sum += static_cast<long>(w[i]) * s[i];
  return sum;
}

// Profiles carry overrides for the whole paper catalog; keep those that apply.
DecisionMatrix score(const Catalog& c, const ScoringProfile& p, const std::vector<ScoreOverride>& extra = {}) {
  ScoringProfile q = p;
  q.overrides = overrides_for(c, p);
  return score_matrix(c, q, extra);
}

Criterion threshold(CriterionName name, ThresholdBand band) {
  Criterion c;
  c.name = name;
  c.weight = 1;
  c.bins.band = band;
  return c;
}

}  // namespace

TEST(Bins, ThresholdsAreInclusiveAsWritten) {
  const ThresholdBand band{Threshold{Comparison::greater_equal, 2.0}, Threshold{Comparison::less_equal, 0.5}};
  EXPECT_EQ(band.classify(2.0), Ordinal::high);
  EXPECT_EQ(band.classify(1.99), Ordinal::mid);
  EXPECT_EQ(band.classify(0.5), Ordinal::low);
  EXPECT_EQ(band.classify(0.51), Ordinal::mid);

  const ThresholdBand strict{Threshold{Comparison::greater, 10.0}, Threshold{Comparison::less, 3.0}};
  EXPECT_EQ(strict.classify(10.0), Ordinal::mid);
  EXPECT_EQ(strict.classify(3.0), Ordinal::mid);
  EXPECT_EQ(strict.classify(2.999), Ordinal::low);
}

TEST(Bins, OverlappingBandRejected) {
  const ThresholdBand bad{Threshold{Comparison::greater_equal, 1.0}, Threshold{Comparison::less_equal, 5.0}};
  EXPECT_THROW(validate(bad, "x"), ValidationError);
  const ThresholdBand same{Threshold{Comparison::greater, 1.0}, Threshold{Comparison::greater, 5.0}};
  EXPECT_THROW(validate(same, "x"), ValidationError);
}

TEST(Bins, RawQuantities) {
  const auto& c = paper_catalog();
  const auto& d435 = c.at("D435i");
  EXPECT_NEAR(*raw_quantity(d435, CriterionName::resolution), 1920.0 * 1080 / 1e6, 1e-12);
  EXPECT_EQ(raw_quantity(c.at("VLP-16"), CriterionName::resolution), std::nullopt);
  EXPECT_DOUBLE_EQ(*raw_quantity(d435, CriterionName::lightness), d435.mass_g);
}

TEST(Bins, ScanPatternBinsOnChannels) {
  const auto& p = far_profile();
  const auto& res = p.criterion(CriterionName::resolution);
  EXPECT_EQ(bin_score(paper_catalog().at("RSBPearl"), res), Ordinal::high);  // 32 channels
  EXPECT_EQ(bin_score(paper_catalog().at("VLP-16"), res), Ordinal::mid);     // 16 channels
}

TEST(Bins, MissingFieldIsUnresolved) {
  const auto c = threshold(CriterionName::power, {Threshold{Comparison::less, 1.0}, std::nullopt});
  EXPECT_EQ(bin_score(paper_catalog().at("iPhone12"), c), std::nullopt);  // no published power
}

TEST(Matrix, FarFieldReproducesReferenceRows) {
  const auto lidars = only(paper_catalog(), {Modality::lidar});
  const auto m = gate_requirements(score(lidars, far_profile()), far_profile());
  const std::map<std::string, Row> expected{
      {"RSBPearl", {2, 2, 2, 1, 2, 1, 1, 1, 1, 0}}, {"VLP-16", {1, 2, 1, 2, 2, 1, 1, 2, 1, 2}},
      {"Cygbot", {1, 2, 0, 0, 2, 1, 2, 0, 2, 2}},   {"iPhone12", {2, 2, 1, 0, 2, 1, 2, 1, 2, 1}},
      {"OS1-32", {2, 2, 2, 2, 2, 1, 1, 1, 2, 0}},
  };
  const std::map<std::string, long> sums{
      {"RSBPearl", 23}, {"VLP-16", 26}, {"Cygbot", 20}, {"iPhone12", 23}, {"OS1-32", 26}};
  EXPECT_EQ(m.weights, (std::vector<int>{2, 2, 2, 2, 2, 2, 1, 1, 1, 2}));
  ASSERT_EQ(m.rows.size(), 5u);
  for (const auto& row : m.rows) {
    const auto& want = expected.at(row.sensor_id);
    EXPECT_EQ(scores_of(row), std::vector<int>(want.begin(), want.end())) << row.sensor_id;
    EXPECT_EQ(row.weighted_sum, sums.at(row.sensor_id)) << row.sensor_id;
    EXPECT_EQ(row.weighted_sum, dot(m.weights, want));
  }
  // Range is a hard requirement for the far field.
  EXPECT_FALSE(m.row("Cygbot").eligible);
  EXPECT_FALSE(m.row("iPhone12").eligible);
  EXPECT_EQ(m.row("Cygbot").failing, std::vector<CriterionName>{CriterionName::range});
  EXPECT_EQ(m.row("iPhone12").failing, std::vector<CriterionName>{CriterionName::range});
  EXPECT_TRUE(m.row("VLP-16").eligible);
  EXPECT_TRUE(m.row("OS1-32").eligible);
}

TEST(Matrix, NearFieldReproducesReferenceRows) {
  const auto cams = only(paper_catalog(), {Modality::camera2d, Modality::camera3d});
  const auto m = gate_requirements(score(cams, near_profile()), near_profile());
  const std::map<std::string, Row> expected{
      {"FireflyS", {1, 1, 1, 1, 0, 0, 1, 0, 2, 1}}, {"D435i", {2, 2, 1, 1, 1, 0, 1, 2, 1, 2}},
      {"D455i", {1, 2, 1, 1, 1, 0, 1, 2, 0, 2}},    {"Zed2", {2, 2, 2, 2, 1, 0, 1, 1, 1, 1}},
      {"OAK-D", {1, 2, 1, 1, 1, 0, 1, 1, 1, 1}},
  };
  const std::map<std::string, long> sums{{"FireflyS", 14}, {"D435i", 24}, {"D455i", 20}, {"Zed2", 23}, {"OAK-D", 18}};
  EXPECT_EQ(m.weights, (std::vector<int>{2, 2, 2, 1, 2, 2, 1, 2, 2, 2}));
  for (const auto& row : m.rows) {
    const auto& want = expected.at(row.sensor_id);
    EXPECT_EQ(scores_of(row), std::vector<int>(want.begin(), want.end())) << row.sensor_id;
    EXPECT_EQ(row.weighted_sum, sums.at(row.sensor_id)) << row.sensor_id;
  }
  EXPECT_EQ(m.ranking.front(), "D435i");
  EXPECT_FALSE(m.row("FireflyS").eligible);
  EXPECT_EQ(m.row("FireflyS").failing, std::vector<CriterionName>{CriterionName::darkness});
  for (const char* id : {"D435i", "D455i", "Zed2", "OAK-D"}) EXPECT_TRUE(m.row(id).eligible) << id;
}

TEST(Matrix, OverridesAlwaysWin) {
  const auto lidars = only(paper_catalog(), {Modality::lidar});
  const ScoreOverride o{"RSBPearl", CriterionName::affordability, Ordinal::high, "test"};
  const auto m = score(lidars, far_profile(), {o});
  const auto col = *m.column(CriterionName::affordability);
  EXPECT_EQ(m.row("RSBPearl").scores[col], Ordinal::high);
  EXPECT_EQ(m.row("RSBPearl").sources[col], ScoreSource::override);
  EXPECT_EQ(m.row("RSBPearl").weighted_sum, 27);
}

TEST(Matrix, OverrideByAlias) {
  const auto cams = only(paper_catalog(), {Modality::camera3d});
  const ScoreOverride o{"D605i", CriterionName::lightness, Ordinal::high, "test"};
  const auto m = score(cams, near_profile(), {o});
  EXPECT_EQ(m.row("D455i").scores[*m.column(CriterionName::lightness)], Ordinal::high);
}

TEST(Matrix, UnresolvedScoresListed) {
  const auto bare = load_catalog(fixture_path("unscorable.yaml"));
  try {
    score(bare, far_profile());
    FAIL() << "expected UnresolvedScoreError";
  } catch (const UnresolvedScoreError& e) {
    std::set<CriterionName> missing;
    for (const auto& [id, c] : e.missing()) {
      EXPECT_EQ(id, "Bare");
      missing.insert(c);
    }
    EXPECT_TRUE(missing.contains(CriterionName::resolution));
    EXPECT_TRUE(missing.contains(CriterionName::power));
    EXPECT_FALSE(missing.contains(CriterionName::range));
    EXPECT_FALSE(missing.contains(CriterionName::lightness));
  }
}

TEST(Matrix, AllZeroWeightsGiveZeroSums) {
  auto p = far_profile();
  for (auto& c : p.criteria) c.weight = 0;
  const auto m = score(only(paper_catalog(), {Modality::lidar}), p);
  for (const auto& r : m.rows) EXPECT_EQ(r.weighted_sum, 0);
  // Stable ranking keeps catalog order.
  EXPECT_EQ(m.ranking.front(), "RSBPearl");
}

TEST(Matrix, ModalityOverviewReproducesReferenceGrid) {
  const auto exemplars = load_catalog(data_path("modality_exemplars.yaml"));
  const auto profile = load_profile(data_path("modality.profile"));
  const auto t = modality_table(exemplars, profile);
  // Reference column order: res, acc, fov, range, power, dark, dust, ease, light, afford.
  const std::vector<CriterionName> order{CriterionName::resolution, CriterionName::accuracy,
                                         CriterionName::fov,        CriterionName::range,
                                         CriterionName::power,      CriterionName::darkness,
                                         CriterionName::dust,       CriterionName::implementation_ease,
                                         CriterionName::lightness,  CriterionName::affordability};
  const std::map<Modality, std::pair<std::string, Row>> expected{
      {Modality::lidar, {"VLP-16", {2, 2, 2, 2, 0, 2, 0, 2, 0, 0}}},
      {Modality::camera2d, {"FireflyS", {2, 2, 2, 0, 1, 0, 0, 2, 1, 2}}},
      {Modality::camera3d, {"D435i", {2, 2, 2, 0, 1, 2, 0, 2, 1, 1}}},
      {Modality::radar, {"XM132", {1, 1, 1, 2, 2, 2, 2, 1, 2, 1}}},
      {Modality::sonar, {"MB1000", {1, 1, 1, 1, 2, 2, 2, 1, 2, 1}}},
      {Modality::thermal, {"Tau2", {1, 1, 1, 1, 1, 2, 1, 0, 1, 1}}},
  };
  ASSERT_EQ(t.rows.size(), 6u);
  for (const auto& row : t.rows) {
    const auto& [id, want] = expected.at(row.modality);
    EXPECT_EQ(row.exemplar_id, id);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const auto col = static_cast<std::size_t>(std::find(t.criteria.begin(), t.criteria.end(), order[k]) -
                                                t.criteria.begin());
      EXPECT_EQ(score_of(row.scores[col]), want[k]) << id << " " << to_string(order[k]);
    }
  }
}

TEST(Profile, RoundTrip) {
  for (const char* name : {"far_field.profile", "near_field.profile", "modality.profile"}) {
    const auto p = load_profile(data_path(name));
    EXPECT_EQ(parse_profile(dump_profile(p)), p) << name;
  }
}

TEST(Profile, MissingCriterionRejected) {
  auto p = far_profile();
  p.criteria.pop_back();
  EXPECT_THROW(validate(p), ValidationError);
  p = far_profile();
  p.criteria[0].weight = -1;
  EXPECT_THROW(validate(p), ValidationError);
}

TEST(ScoringProperty, WeightedSumMatchesOracle) {
  Gen g(21);
  for (int i = 0; i < 100; ++i) {
    const auto c = g.catalog(g.integer(1, 10));
    const auto p = g.profile(5);
    const auto m = score_matrix(c, p);
    for (const auto& row : m.rows) {
      long sum = 0;
      for (std::size_t k = 0; k < p.criteria.size(); ++k) {
        const auto s = bin_score(c.at(row.sensor_id), p.criteria[k]);
        ASSERT_TRUE(s.has_value());
        sum += p.criteria[k].weight * score_of(*s);
      }
      EXPECT_EQ(row.weighted_sum, sum);
    }
  }
}

TEST(ScoringProperty, MonotoneInWeights) {
  Gen g(22);
  for (int i = 0; i < 100; ++i) {
    const auto c = g.catalog(6);
    auto p = g.profile();
    const auto before = score_matrix(c, p);
    p.criteria[static_cast<std::size_t>(g.integer(0, 9))].weight += g.integer(1, 3);
    const auto after = score_matrix(c, p);
    for (std::size_t r = 0; r < before.rows.size(); ++r)
      EXPECT_GE(after.rows[r].weighted_sum, before.rows[r].weighted_sum);
  }
}

TEST(ScoringProperty, ScalingWeightsPreservesRanking) {
  Gen g(23);
  for (int i = 0; i < 100; ++i) {
    const auto c = g.catalog(8);
    auto p = g.profile();
    const auto base = score_matrix(c, p);
    const int k = g.integer(2, 7);
    for (auto& cr : p.criteria) cr.weight *= k;
    const auto scaled = score_matrix(c, p);
    EXPECT_EQ(base.ranking, scaled.ranking);
    for (std::size_t r = 0; r < base.rows.size(); ++r)
      EXPECT_EQ(scaled.rows[r].weighted_sum, k * base.rows[r].weighted_sum);
  }
}

TEST(ScoringProperty, CatalogPermutationInvariance) {
  Gen g(24);
  for (int i = 0; i < 100; ++i) {
    const auto c = g.catalog(7);
    const auto p = g.profile();
    auto shuffled = c.sensors();
    std::shuffle(shuffled.begin(), shuffled.end(), g.engine());
    const auto a = score_matrix(c, p);
    const auto b = score_matrix(Catalog(shuffled), p);
    for (const auto& row : a.rows) {
      EXPECT_EQ(b.row(row.sensor_id).scores, row.scores);
      EXPECT_EQ(b.row(row.sensor_id).weighted_sum, row.weighted_sum);
    }
  }
}
