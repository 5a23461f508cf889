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

#ifndef TOXAUDIT_EXPERIMENT_H_
#define TOXAUDIT_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "toxaudit/baseline_model.h"
#include "toxaudit/dataset.h"
#include "toxaudit/metrics.h"
#include "toxaudit/predictions.h"

namespace toxaudit {

inline constexpr double kDefaultIdentityFilterThreshold = 0.25;

// kMixed samples from the whole corpus; kNaive only from records whose
// identity_targeted() is below the filter threshold.
enum class SplitMode { kMixed, kNaive };

std::string_view to_string(SplitMode mode);
// Accepts "mixed" or "naive"; throws ValidationError otherwise.
SplitMode parse_split_mode(std::string_view text);

struct SplitSpec {
  SplitMode mode = SplitMode::kMixed;
  std::size_t size = 1;
  double identity_filter_threshold = kDefaultIdentityFilterThreshold;
  std::uint64_t seed = 0;
  double label_threshold = kDefaultLabelThreshold;
};

void validate(const SplitSpec& spec);

// Indices the spec may sample from, ascending.
std::vector<std::size_t> eligible_indices(const Dataset& dataset, const SplitSpec& spec);

// Seeded uniform sample of spec.size records without replacement, kept in
// source order. Throws ValidationError naming the eligible count when the
// pool is too small.
Dataset build_split(const Dataset& dataset, const SplitSpec& spec);

// Training-set composition. A record counts as subgroup when its
// identity_targeted() reaches the membership threshold. The subgroup cells
// are empty when the split contains no subgroup records at all.
struct SplitStats {
  std::size_t total = 0;
  std::size_t non_subgroup_toxic = 0;
  std::size_t non_subgroup_non_toxic = 0;
  std::optional<std::size_t> subgroup_toxic;
  std::optional<std::size_t> subgroup_non_toxic;
  // non-toxic / toxic over the whole split; empty when there are no toxic records.
  std::optional<double> nontoxic_to_toxic_ratio;

  bool operator==(const SplitStats&) const = default;
};

SplitStats split_stats(const Dataset& split, double label_threshold = kDefaultLabelThreshold,
                       double membership_threshold = kDefaultMembershipThreshold);

struct ComparisonResult {
  BiasReport mixed_report;
  BiasReport naive_report;
  SplitStats mixed_stats;
  SplitStats naive_stats;
  PredictionSet mixed_predictions;
  PredictionSet naive_predictions;
};

// Builds both splits from `train`, fits one baseline classifier per split,
// scores `test` with each and audits the scores over one slice per tracked
// identity. Throws ValidationError when train and test share an id.
ComparisonResult run_comparison(const Dataset& train, const Dataset& test,
                                const SplitSpec& spec_mixed, const SplitSpec& spec_naive,
                                const ModelConfig& model_config,
                                double membership_threshold = kDefaultMembershipThreshold);

}  // namespace toxaudit

#endif  // TOXAUDIT_EXPERIMENT_H_
