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

#ifndef TOXAUDIT_METRICS_H_
#define TOXAUDIT_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toxaudit/dataset.h"
#include "toxaudit/predictions.h"

namespace toxaudit {

// An AUC with the class counts it was computed from. `value` is empty
// exactly when one of the two classes is empty.
struct MetricValue {
  std::optional<double> value;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;

  bool defined() const { return value.has_value(); }
  bool operator==(const MetricValue&) const = default;
};

// Mann-Whitney AUC with midranks: the probability that a random positive
// outscores a random negative, ties counting one half. O(n log n).
MetricValue auc(std::span<const double> positives, std::span<const double> negatives);

// AUC restricted to subgroup members.
MetricValue subgroup_auc(const Dataset& dataset, const PredictionSet& predictions,
                         const SubgroupSlice& slice,
                         double label_threshold = kDefaultLabelThreshold);

// Positives: toxic background. Negatives: non-toxic subgroup members.
// Low values mean non-toxic subgroup comments receive high scores.
MetricValue bpsn_auc(const Dataset& dataset, const PredictionSet& predictions,
                     const SubgroupSlice& slice, double label_threshold = kDefaultLabelThreshold);

// Positives: toxic subgroup members. Negatives: non-toxic background.
// Low values mean toxic subgroup comments receive low scores.
MetricValue bnsp_auc(const Dataset& dataset, const PredictionSet& predictions,
                     const SubgroupSlice& slice, double label_threshold = kDefaultLabelThreshold);

MetricValue overall_auc(const Dataset& dataset, const PredictionSet& predictions,
                        double label_threshold = kDefaultLabelThreshold);

struct BiasRow {
  std::string identity;
  MetricValue subgroup_auc;
  MetricValue bpsn_auc;
  MetricValue bnsp_auc;
  std::size_t subgroup_size = 0;

  bool operator==(const BiasRow&) const = default;
};

// The three slice metrics for one membership mask over aligned scores.
BiasRow evaluate_slice(std::span<const double> scores, std::span<const std::uint8_t> toxic,
                       std::span<const std::uint8_t> member);

struct BiasReport {
  MetricValue overall;
  // Ascending subgroup AUC; undefined values sort last, ties keep slice order.
  std::vector<BiasRow> rows;

  bool operator==(const BiasReport&) const = default;
};

void sort_rows(std::vector<BiasRow>& rows);

BiasReport bias_report(const Dataset& dataset, const PredictionSet& predictions,
                       std::span<const SubgroupSlice> slices,
                       double label_threshold = kDefaultLabelThreshold);

// One slice per tracked identity at the given membership threshold.
std::vector<SubgroupSlice> default_slices(const Dataset& dataset,
                                          double membership_threshold = kDefaultMembershipThreshold);

// Equal-width bins over [0,1]. Bin i covers [i/n, (i+1)/n); the last bin
// also includes 1.0.
struct ScoreHistogram {
  std::vector<std::size_t> toxic;
  std::vector<std::size_t> non_toxic;

  std::size_t n_bins() const { return toxic.size(); }
  double bin_lo(std::size_t i) const;
  double bin_hi(std::size_t i) const;
  bool operator==(const ScoreHistogram&) const = default;
};

std::size_t bin_index(double score, std::size_t n_bins);

// Throws ValidationError when n_bins is zero.
ScoreHistogram score_histogram(const Dataset& dataset, const PredictionSet& predictions,
                               const SubgroupSlice& slice,
                               double label_threshold = kDefaultLabelThreshold,
                               std::size_t n_bins = 10);

}  // namespace toxaudit

#endif  // TOXAUDIT_METRICS_H_
