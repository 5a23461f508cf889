/*
 * Copyright 2026 The toxaudit Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "toxaudit/metrics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "test_util.h"
#include "toxaudit/errors.h"

namespace toxaudit {
namespace {

using testing::brute_force_auc;
using testing::make_dataset;
using testing::make_predictions;

const std::vector<std::string> kOne = {"muslim"};

TEST(Auc, PerfectSeparation) {
  const double pos[] = {0.9};
  const double neg[] = {0.1};
  EXPECT_EQ(auc(pos, neg).value, 1.0);
}

TEST(Auc, AllTiesIsOneHalf) {
  const std::vector<double> pos(5, 0.3);
  const std::vector<double> neg(7, 0.3);
  EXPECT_EQ(auc(pos, neg).value, 0.5);
}

TEST(Auc, ThreeOfFourPairs) {
  const double pos[] = {0.8, 0.4};
  const double neg[] = {0.6, 0.2};
  const MetricValue m = auc(pos, neg);
  EXPECT_EQ(m.value, 0.75);
  EXPECT_EQ(m.n_pos, 2u);
  EXPECT_EQ(m.n_neg, 2u);
}

TEST(Auc, EmptySideIsUndefined) {
  const double some[] = {0.5};
  EXPECT_FALSE(auc({}, some).defined());
  EXPECT_FALSE(auc(some, {}).defined());
  EXPECT_EQ(auc(some, {}).n_pos, 1u);
}

TEST(Auc, MatchesPairCountingOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto pos = testing::tied_scores(rng, 1 + rng() % 100);
    const auto neg = testing::tied_scores(rng, 1 + rng() % 100);
    EXPECT_NEAR(*auc(pos, neg).value, brute_force_auc(pos, neg), 1e-12);
  }
}

TEST(Auc, InvariantUnderMonotoneTransform) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto pos = testing::tied_scores(rng, 1 + rng() % 50);
    auto neg = testing::tied_scores(rng, 1 + rng() % 50);
    const double before = *auc(pos, neg).value;
    auto transform = [](double s) { return std::pow(s, 3.0) * 0.5 + 0.1; };
    std::transform(pos.begin(), pos.end(), pos.begin(), transform);
    std::transform(neg.begin(), neg.end(), neg.begin(), transform);
    EXPECT_EQ(*auc(pos, neg).value, before);
  }
}

TEST(Auc, ComplementSymmetry) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::tied_scores(rng, 1 + rng() % 60);
    const auto b = testing::tied_scores(rng, 1 + rng() % 60);
    EXPECT_NEAR(*auc(a, b).value, 1.0 - *auc(b, a).value, 1e-12);
  }
}

// 8 records, one identity: subgroup {s1..s4}, background {b1..b4}.
struct EightRecordFixture {
  Dataset dataset = make_dataset(kOne, {{"s1", 0.9, {{"muslim", 1.0}}},
                                        {"s2", 0.6, {{"muslim", 0.7}}},
                                        {"s3", 0.1, {{"muslim", 0.5}}},
                                        {"s4", 0.0, {{"muslim", 0.9}}},
                                        {"b1", 0.8, {}},
                                        {"b2", 0.7, {{"muslim", 0.2}}},
                                        {"b3", 0.2, {}},
                                        {"b4", 0.0, {}}});
  PredictionSet predictions = make_predictions({{"s1", 0.9},
                                                {"s2", 0.3},
                                                {"s3", 0.5},
                                                {"s4", 0.1},
                                                {"b1", 0.7},
                                                {"b2", 0.4},
                                                {"b3", 0.35},
                                                {"b4", 0.05}});
};

TEST(SliceMetrics, SubgroupAucPairCount) {
  EightRecordFixture f;
  // toxic {0.9, 0.3} vs non-toxic {0.5, 0.1}: 3 of 4 pairs.
  EXPECT_EQ(subgroup_auc(f.dataset, f.predictions, {"muslim", 0.5}).value, 0.75);
}

TEST(SliceMetrics, BpsnAucPairCount) {
  EightRecordFixture f;
  // background toxic {0.7, 0.4} vs subgroup non-toxic {0.5, 0.1}: 3 of 4.
  EXPECT_EQ(bpsn_auc(f.dataset, f.predictions, {"muslim", 0.5}).value, 0.75);
}

TEST(SliceMetrics, BnspAucPairCount) {
  EightRecordFixture f;
  // subgroup toxic {0.9, 0.3} vs background non-toxic {0.35, 0.05}: 3 of 4.
  EXPECT_EQ(bnsp_auc(f.dataset, f.predictions, {"muslim", 0.5}).value, 0.75);
}

TEST(SliceMetrics, BpsnTwoThirds) {
  const Dataset d = make_dataset(kOne, {{"n", 0.0, {{"muslim", 1.0}}},
                                        {"p1", 1.0, {}},
                                        {"p2", 1.0, {}},
                                        {"p3", 1.0, {}}});
  const auto p = make_predictions({{"n", 0.2}, {"p1", 0.7}, {"p2", 0.4}, {"p3", 0.1}});
  EXPECT_DOUBLE_EQ(*bpsn_auc(d, p, {"muslim"}).value, 2.0 / 3.0);
}

TEST(SliceMetrics, BpsnUndefinedWithoutToxicBackground) {
  const Dataset d = make_dataset(kOne, {{"n", 0.0, {{"muslim", 1.0}}}, {"b", 0.0, {}}});
  const auto p = make_predictions({{"n", 0.2}, {"b", 0.7}});
  EXPECT_FALSE(bpsn_auc(d, p, {"muslim"}).defined());
}

TEST(SliceMetrics, BpsnPerfectSeparation) {
  const Dataset d = make_dataset(kOne, {{"n1", 0.0, {{"muslim", 1.0}}},
                                        {"n2", 0.0, {{"muslim", 1.0}}},
                                        {"p1", 1.0, {}}});
  const auto p = make_predictions({{"n1", 0.1}, {"n2", 0.2}, {"p1", 0.3}});
  EXPECT_EQ(bpsn_auc(d, p, {"muslim"}).value, 1.0);
}

TEST(SliceMetrics, BnspExamples) {
  const Dataset d1 = make_dataset(kOne, {{"s", 1.0, {{"muslim", 1.0}}}, {"b", 0.0, {}}});
  EXPECT_EQ(bnsp_auc(d1, make_predictions({{"s", 0.9}, {"b", 0.3}}), {"muslim"}).value, 1.0);

  const Dataset d2 = make_dataset(kOne, {{"s1", 1.0, {{"muslim", 1.0}}},
                                         {"s2", 1.0, {{"muslim", 1.0}}},
                                         {"b1", 0.0, {}},
                                         {"b2", 0.0, {}}});
  const auto p2 = make_predictions({{"s1", 0.2}, {"s2", 0.6}, {"b1", 0.4}, {"b2", 0.4}});
  EXPECT_EQ(bnsp_auc(d2, p2, {"muslim"}).value, 0.5);

  const Dataset d3 = make_dataset(kOne, {{"s", 0.0, {{"muslim", 1.0}}}, {"b", 0.0, {}}});
  EXPECT_FALSE(bnsp_auc(d3, make_predictions({{"s", 0.9}, {"b", 0.3}}), {"muslim"}).defined());
}

TEST(SliceMetrics, SubgroupWithoutToxicMembersIsUndefined) {
  const Dataset d = make_dataset(kOne, {{"s1", 0.0, {{"muslim", 1.0}}},
                                        {"s2", 0.1, {{"muslim", 1.0}}},
                                        {"b", 1.0, {}}});
  const auto p = make_predictions({{"s1", 0.2}, {"s2", 0.6}, {"b", 0.4}});
  const MetricValue m = subgroup_auc(d, p, {"muslim"});
  EXPECT_FALSE(m.defined());
  EXPECT_EQ(m.n_pos, 0u);
  EXPECT_EQ(m.n_neg, 2u);
}

TEST(SliceMetrics, MissingPredictionNamesId) {
  const Dataset d = make_dataset(kOne, {{"a", 0.0, {}}, {"lost", 1.0, {}}});
  const auto p = make_predictions({{"a", 0.2}});
  try {
    subgroup_auc(d, p, {"muslim"});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("lost"), std::string::npos);
  }
}

TEST(OverallAuc, ScoresEqualToLabels) {
  const Dataset d = make_dataset(kOne, {{"a", 0.0, {}}, {"b", 0.7, {}}, {"c", 0.2, {}}});
  const auto p = make_predictions({{"a", 0.0}, {"b", 1.0}, {"c", 0.0}});
  EXPECT_EQ(overall_auc(d, p).value, 1.0);
}

TEST(OverallAuc, RandomScoresNearOneHalf) {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<testing::Row> rows;
  std::vector<std::pair<std::string, double>> scores;
  for (int i = 0; i < 10000; ++i) {
    rows.push_back({std::to_string(i), unit(rng) < 0.3 ? 1.0 : 0.0, {}});
    scores.emplace_back(std::to_string(i), unit(rng));
  }
  const MetricValue m = overall_auc(make_dataset(kOne, rows), make_predictions(scores));
  EXPECT_NEAR(*m.value, 0.5, 0.02);
}

TEST(BiasReport, SingleSliceMatchesIndividualMetrics) {
  EightRecordFixture f;
  const SubgroupSlice slices[] = {{"muslim", 0.5}};
  const BiasReport r = bias_report(f.dataset, f.predictions, slices);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].identity, "muslim");
  EXPECT_EQ(r.rows[0].subgroup_auc.value, 0.75);
  EXPECT_EQ(r.rows[0].bpsn_auc.value, 0.75);
  EXPECT_EQ(r.rows[0].bnsp_auc.value, 0.75);
  EXPECT_EQ(r.rows[0].subgroup_size, 4u);
  // toxic {0.9,0.3,0.7,0.4} vs non-toxic {0.5,0.1,0.35,0.05}: 13 of 16 pairs.
  EXPECT_EQ(r.overall.value, 13.0 / 16.0);
  const std::vector<double> pos = {0.9, 0.3, 0.7, 0.4};
  const std::vector<double> neg = {0.5, 0.1, 0.35, 0.05};
  EXPECT_EQ(*r.overall.value, brute_force_auc(pos, neg));
}

TEST(BiasReport, EmptySliceList) {
  EightRecordFixture f;
  const BiasReport r = bias_report(f.dataset, f.predictions, {});
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(r.overall.defined());
}

TEST(BiasReport, RowsSortedAscendingWithUndefinedLast) {
  std::vector<BiasRow> rows(4);
  rows[0].identity = "a";
  rows[0].subgroup_auc.value = 0.9;
  rows[1].identity = "b";
  rows[2].identity = "c";
  rows[2].subgroup_auc.value = 0.6;
  rows[3].identity = "d";
  rows[3].subgroup_auc.value = 0.6;
  sort_rows(rows);
  EXPECT_EQ(rows[0].identity, "c");
  EXPECT_EQ(rows[1].identity, "d");
  EXPECT_EQ(rows[2].identity, "a");
  EXPECT_EQ(rows[3].identity, "b");
}

TEST(BiasReport, SliceCoveringEverything) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<testing::Row> rows;
  std::vector<std::pair<std::string, double>> scores;
  for (int i = 0; i < 200; ++i) {
    rows.push_back({std::to_string(i), unit(rng), {{"muslim", 0.5 + 0.5 * unit(rng)}}});
    scores.emplace_back(std::to_string(i), unit(rng));
  }
  const Dataset d = make_dataset(kOne, rows);
  const auto p = make_predictions(scores);
  const SubgroupSlice slices[] = {{"muslim", 0.5}};
  const BiasReport r = bias_report(d, p, slices);
  EXPECT_EQ(r.rows[0].subgroup_auc.value, r.overall.value);
  EXPECT_FALSE(r.rows[0].bpsn_auc.defined());
  EXPECT_FALSE(r.rows[0].bnsp_auc.defined());
}

TEST(BiasReport, AgreesWithPerMetricFunctions) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<std::string> ids = {"a", "b", "c"};
  std::vector<testing::Row> rows;
  std::vector<std::pair<std::string, double>> scores;
  for (int i = 0; i < 300; ++i) {
    rows.push_back({std::to_string(i), unit(rng), {{"a", unit(rng)}, {"b", unit(rng)}, {"c", unit(rng)}}});
    scores.emplace_back(std::to_string(i), std::round(unit(rng) * 10) / 10);
  }
  const Dataset d = make_dataset(ids, rows);
  const auto p = make_predictions(scores);
  const auto slices = default_slices(d);
  const BiasReport r = bias_report(d, p, slices);
  for (const auto& row : r.rows) {
    const SubgroupSlice s{row.identity, 0.5};
    EXPECT_EQ(row.subgroup_auc, subgroup_auc(d, p, s));
    EXPECT_EQ(row.bpsn_auc, bpsn_auc(d, p, s));
    EXPECT_EQ(row.bnsp_auc, bnsp_auc(d, p, s));
    EXPECT_EQ(row.subgroup_size, partition(d, s).subgroup.size());
  }
}

TEST(PlantedBias, InflatingSubgroupNegativesLowersOnlyBpsn) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<testing::Row> rows;
  std::vector<std::pair<std::string, double>> base, inflated, suppressed;
  for (int i = 0; i < 2000; ++i) {
    const bool member = unit(rng) < 0.3;
    const bool toxic = unit(rng) < 0.3;
    rows.push_back({std::to_string(i), toxic ? 1.0 : 0.0,
                    member ? std::map<std::string, double>{{"muslim", 1.0}}
                           : std::map<std::string, double>{}});
    const double s = std::clamp((toxic ? 0.65 : 0.35) + 0.2 * (unit(rng) - 0.5), 0.0, 1.0);
    base.emplace_back(std::to_string(i), s);
    inflated.emplace_back(std::to_string(i), member && !toxic ? std::min(1.0, s + 0.3) : s);
    suppressed.emplace_back(std::to_string(i), member && toxic ? std::max(0.0, s - 0.3) : s);
  }
  const Dataset d = make_dataset(kOne, rows);
  const SubgroupSlice slice{"muslim", 0.5};
  const auto p0 = make_predictions(base);
  const auto p1 = make_predictions(inflated);
  const auto p2 = make_predictions(suppressed);
  EXPECT_LT(*bpsn_auc(d, p1, slice).value, *bpsn_auc(d, p0, slice).value);
  EXPECT_EQ(bnsp_auc(d, p1, slice), bnsp_auc(d, p0, slice));
  EXPECT_LT(*bnsp_auc(d, p2, slice).value, *bnsp_auc(d, p0, slice).value);
  EXPECT_EQ(bpsn_auc(d, p2, slice), bpsn_auc(d, p0, slice));
}

TEST(ScoreHistogram, EmptySubgroupIsAllZero) {
  const Dataset d = make_dataset(kOne, {{"a", 1.0, {}}});
  const auto h = score_histogram(d, make_predictions({{"a", 0.4}}), {"muslim"}, 0.5, 5);
  EXPECT_EQ(h.toxic, std::vector<std::size_t>(5, 0));
  EXPECT_EQ(h.non_toxic, std::vector<std::size_t>(5, 0));
}

TEST(ScoreHistogram, DirectBinning) {
  const Dataset d = make_dataset(kOne, {{"a", 0.0, {{"muslim", 1.0}}},
                                        {"b", 1.0, {{"muslim", 1.0}}},
                                        {"c", 1.0, {{"muslim", 1.0}}}});
  const auto p = make_predictions({{"a", 0.05}, {"b", 0.95}, {"c", 0.95}});
  const auto h = score_histogram(d, p, {"muslim"}, 0.5, 10);
  EXPECT_EQ(h.non_toxic[0], 1u);
  EXPECT_EQ(h.toxic[9], 2u);
  EXPECT_DOUBLE_EQ(h.bin_lo(9), 0.9);
  EXPECT_DOUBLE_EQ(h.bin_hi(9), 1.0);
}

TEST(ScoreHistogram, BinEdges) {
  EXPECT_EQ(bin_index(0.0, 10), 0u);
  EXPECT_EQ(bin_index(0.1, 10), 1u);
  EXPECT_EQ(bin_index(0.999, 10), 9u);
  EXPECT_EQ(bin_index(1.0, 10), 9u);
  EXPECT_EQ(bin_index(1.0, 1), 0u);
}

TEST(ScoreHistogram, ZeroBinsRejected) {
  const Dataset d = make_dataset(kOne, {{"a", 1.0, {}}});
  EXPECT_THROW(score_histogram(d, make_predictions({{"a", 0.4}}), {"muslim"}, 0.5, 0),
               ValidationError);
}

TEST(ScoreHistogram, TotalsMatchPartition) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<testing::Row> rows;
    std::vector<std::pair<std::string, double>> scores;
    for (int i = 0; i < 200; ++i) {
      rows.push_back({std::to_string(i), unit(rng), {{"muslim", unit(rng)}}});
      scores.emplace_back(std::to_string(i), unit(rng));
    }
    const Dataset d = make_dataset(kOne, rows);
    const SubgroupSlice slice{"muslim", 0.5};
    const std::size_t bins = 1 + rng() % 20;
    const auto h = score_histogram(d, make_predictions(scores), slice, 0.5, bins);
    std::size_t toxic = 0, non_toxic = 0;
    for (auto i : partition(d, slice).subgroup) ++(is_toxic(d[i]) ? toxic : non_toxic);
    std::size_t ht = 0, hn = 0;
    for (std::size_t b = 0; b < bins; ++b) {
      ht += h.toxic[b];
      hn += h.non_toxic[b];
    }
    EXPECT_EQ(ht, toxic);
    EXPECT_EQ(hn, non_toxic);
  }
}

}  // namespace
}  // namespace toxaudit
