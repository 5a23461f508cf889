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

#include <algorithm>
#include <cmath>

#include "toxaudit/errors.h"
#include "toxaudit/kernels.h"

namespace toxaudit {
namespace {

struct Scored {
  double score;
  bool positive;
};

std::vector<std::uint8_t> toxic_mask(const Dataset& dataset, double label_threshold) {
  std::vector<std::uint8_t> mask(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    mask[i] = is_toxic(dataset[i], label_threshold) ? 1 : 0;
  }
  return mask;
}

std::vector<std::uint8_t> member_mask(const Dataset& dataset, const SubgroupSlice& slice) {
  const std::size_t k = dataset.identity_index(slice.identity);
  std::vector<std::uint8_t> mask(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    mask[i] = dataset[i].identities[k] >= slice.membership_threshold ? 1 : 0;
  }
  return mask;
}

enum class SliceMetric { kSubgroup, kBpsn, kBnsp };

MetricValue slice_metric(const Dataset& dataset, const PredictionSet& predictions,
                         const SubgroupSlice& slice, double label_threshold, SliceMetric which) {
  const std::vector<std::uint8_t> member = member_mask(dataset, slice);
  const std::vector<double> scores = aligned_scores(dataset, predictions);
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const bool toxic = is_toxic(dataset[i], label_threshold);
    const bool in = member[i] != 0;
    switch (which) {
      case SliceMetric::kSubgroup:
        if (in) (toxic ? pos : neg).push_back(scores[i]);
        break;
      case SliceMetric::kBpsn:
        if (!in && toxic) pos.push_back(scores[i]);
        if (in && !toxic) neg.push_back(scores[i]);
        break;
      case SliceMetric::kBnsp:
        if (in && toxic) pos.push_back(scores[i]);
        if (!in && !toxic) neg.push_back(scores[i]);
        break;
    }
  }
  return auc(pos, neg);
}

}  // namespace

MetricValue auc(std::span<const double> positives, std::span<const double> negatives) {
  MetricValue out;
  out.n_pos = positives.size();
  out.n_neg = negatives.size();
  if (positives.empty() || negatives.empty()) return out;

  std::vector<Scored> all;
  all.reserve(positives.size() + negatives.size());
  for (double s : positives) all.push_back({s, true});
  for (double s : negatives) all.push_back({s, false});
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) { return a.score < b.score; });

  // Ranks are 1-based; a run of ties [i, j) shares the midrank (i + 1 + j) / 2.
  // Rank sums stay half-integers, so the statistic is exact in double.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i + 1;
    while (j < all.size() && all[j].score == all[i].score) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (all[k].positive) positive_rank_sum += midrank;
    }
    i = j;
  }
  const double n_pos = static_cast<double>(out.n_pos);
  const double n_neg = static_cast<double>(out.n_neg);
  const double u = positive_rank_sum - n_pos * (n_pos + 1.0) / 2.0;
  out.value = u / (n_pos * n_neg);
  return out;
}

MetricValue subgroup_auc(const Dataset& dataset, const PredictionSet& predictions,
                         const SubgroupSlice& slice, double label_threshold) {
  return slice_metric(dataset, predictions, slice, label_threshold, SliceMetric::kSubgroup);
}

MetricValue bpsn_auc(const Dataset& dataset, const PredictionSet& predictions,
                     const SubgroupSlice& slice, double label_threshold) {
  return slice_metric(dataset, predictions, slice, label_threshold, SliceMetric::kBpsn);
}

MetricValue bnsp_auc(const Dataset& dataset, const PredictionSet& predictions,
                     const SubgroupSlice& slice, double label_threshold) {
  return slice_metric(dataset, predictions, slice, label_threshold, SliceMetric::kBnsp);
}

MetricValue overall_auc(const Dataset& dataset, const PredictionSet& predictions,
                        double label_threshold) {
  const std::vector<double> scores = aligned_scores(dataset, predictions);
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    (is_toxic(dataset[i], label_threshold) ? pos : neg).push_back(scores[i]);
  }
  return auc(pos, neg);
}

BiasRow evaluate_slice(std::span<const double> scores, std::span<const std::uint8_t> toxic,
                       std::span<const std::uint8_t> member) {
  std::vector<double> sub_pos, sub_neg, bg_pos, bg_neg;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (member[i]) {
      (toxic[i] ? sub_pos : sub_neg).push_back(scores[i]);
    } else {
      (toxic[i] ? bg_pos : bg_neg).push_back(scores[i]);
    }
  }
  BiasRow row;
  row.subgroup_auc = auc(sub_pos, sub_neg);
  row.bpsn_auc = auc(bg_pos, sub_neg);
  row.bnsp_auc = auc(sub_pos, bg_neg);
  row.subgroup_size = sub_pos.size() + sub_neg.size();
  return row;
}

void sort_rows(std::vector<BiasRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const BiasRow& a, const BiasRow& b) {
    const auto& x = a.subgroup_auc.value;
    const auto& y = b.subgroup_auc.value;
    if (x && y) return *x < *y;
    return x.has_value() && !y.has_value();
  });
}

BiasReport bias_report(const Dataset& dataset, const PredictionSet& predictions,
                       std::span<const SubgroupSlice> slices, double label_threshold) {
  const std::vector<double> scores = aligned_scores(dataset, predictions);
  const std::vector<std::uint8_t> toxic = toxic_mask(dataset, label_threshold);

  BiasReport report;
  {
    std::vector<double> pos;
    std::vector<double> neg;
    for (std::size_t i = 0; i < scores.size(); ++i) (toxic[i] ? pos : neg).push_back(scores[i]);
    report.overall = auc(pos, neg);
  }

  std::vector<std::vector<std::uint8_t>> members;
  members.reserve(slices.size());
  for (const auto& slice : slices) members.push_back(member_mask(dataset, slice));
  report.rows = kernels::parallel::evaluate_slices(scores, toxic, members);
  for (std::size_t s = 0; s < slices.size(); ++s) report.rows[s].identity = slices[s].identity;
  sort_rows(report.rows);
  return report;
}

std::vector<SubgroupSlice> default_slices(const Dataset& dataset, double membership_threshold) {
  if (!(membership_threshold > 0.0 && membership_threshold <= 1.0)) {
    throw ValidationError("membership threshold must be in (0,1]");
  }
  std::vector<SubgroupSlice> slices;
  for (const auto& name : dataset.identities()) slices.push_back({name, membership_threshold});
  return slices;
}

double ScoreHistogram::bin_lo(std::size_t i) const {
  return static_cast<double>(i) / static_cast<double>(n_bins());
}

double ScoreHistogram::bin_hi(std::size_t i) const {
  return static_cast<double>(i + 1) / static_cast<double>(n_bins());
}

std::size_t bin_index(double score, std::size_t n_bins) {
  const auto bin = static_cast<std::size_t>(std::floor(score * static_cast<double>(n_bins)));
  return std::min(bin, n_bins - 1);
}

ScoreHistogram score_histogram(const Dataset& dataset, const PredictionSet& predictions,
                               const SubgroupSlice& slice, double label_threshold,
                               std::size_t n_bins) {
  if (n_bins == 0) throw ValidationError("histogram needs at least one bin");
  const std::vector<std::uint8_t> member = member_mask(dataset, slice);
  ScoreHistogram hist;
  hist.toxic.assign(n_bins, 0);
  hist.non_toxic.assign(n_bins, 0);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (!member[i]) continue;
    const std::size_t bin = bin_index(predictions.at(dataset[i].id), n_bins);
    if (is_toxic(dataset[i], label_threshold)) {
      ++hist.toxic[bin];
    } else {
      ++hist.non_toxic[bin];
    }
  }
  return hist;
}

}  // namespace toxaudit
