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

#include "toxaudit/experiment.h"

#include <algorithm>
#include <future>
#include <iterator>
#include <random>
#include <string>

#include "toxaudit/errors.h"

namespace toxaudit {

std::string_view to_string(SplitMode mode) {
  return mode == SplitMode::kNaive ? "naive" : "mixed";
}

SplitMode parse_split_mode(std::string_view text) {
  if (text == "mixed") return SplitMode::kMixed;
  if (text == "naive") return SplitMode::kNaive;
  throw ValidationError("unknown split mode '" + std::string(text) + "' (expected mixed|naive)");
}

void validate(const SplitSpec& spec) {
  if (spec.size < 1) throw ValidationError("split size must be >= 1");
  if (!(spec.identity_filter_threshold > 0.0 && spec.identity_filter_threshold < 1.0)) {
    throw ValidationError("identity filter threshold must be in (0,1)");
  }
  if (!(spec.label_threshold > 0.0 && spec.label_threshold < 1.0)) {
    throw ValidationError("label threshold must be in (0,1)");
  }
}

std::vector<std::size_t> eligible_indices(const Dataset& dataset, const SplitSpec& spec) {
  std::vector<std::size_t> out;
  out.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (spec.mode == SplitMode::kMixed ||
        identity_targeted(dataset[i]) < spec.identity_filter_threshold) {
      out.push_back(i);
    }
  }
  return out;
}

Dataset build_split(const Dataset& dataset, const SplitSpec& spec) {
  validate(spec);
  const std::vector<std::size_t> pool = eligible_indices(dataset, spec);
  if (pool.size() < spec.size) {
    throw ValidationError(std::string(to_string(spec.mode)) + " split needs " +
                          std::to_string(spec.size) + " records but only " +
                          std::to_string(pool.size()) + " are eligible");
  }
  // std::sample over a forward range is selection sampling, which keeps the
  // relative order of the pool.
  std::vector<std::size_t> chosen;
  chosen.reserve(spec.size);
  std::mt19937_64 rng(spec.seed);
  std::sample(pool.begin(), pool.end(), std::back_inserter(chosen), spec.size, rng);
  return dataset.select(chosen);
}

SplitStats split_stats(const Dataset& split, double label_threshold,
                       double membership_threshold) {
  SplitStats stats;
  stats.total = split.size();
  std::size_t sub_toxic = 0;
  std::size_t sub_non_toxic = 0;
  for (const auto& r : split.records()) {
    const bool toxic = is_toxic(r, label_threshold);
    if (identity_targeted(r) >= membership_threshold) {
      ++(toxic ? sub_toxic : sub_non_toxic);
    } else {
      ++(toxic ? stats.non_subgroup_toxic : stats.non_subgroup_non_toxic);
    }
  }
  if (sub_toxic + sub_non_toxic > 0) {
    stats.subgroup_toxic = sub_toxic;
    stats.subgroup_non_toxic = sub_non_toxic;
  }
  const std::size_t toxic = stats.non_subgroup_toxic + sub_toxic;
  const std::size_t non_toxic = stats.non_subgroup_non_toxic + sub_non_toxic;
  if (toxic > 0) {
    stats.nontoxic_to_toxic_ratio = static_cast<double>(non_toxic) / static_cast<double>(toxic);
  }
  return stats;
}

ComparisonResult run_comparison(const Dataset& train, const Dataset& test,
                                const SplitSpec& spec_mixed, const SplitSpec& spec_naive,
                                const ModelConfig& model_config, double membership_threshold) {
  for (const auto& r : test.records()) {
    if (train.contains_id(r.id)) {
      throw ValidationError("train and test share id '" + r.id + "'");
    }
  }
  const Dataset mixed = build_split(train, spec_mixed);
  const Dataset naive = build_split(train, spec_naive);

  ModelConfig mixed_config = model_config;
  mixed_config.label_threshold = spec_mixed.label_threshold;
  ModelConfig naive_config = model_config;
  naive_config.label_threshold = spec_naive.label_threshold;

  // The two fits share only immutable inputs.
  auto naive_fit = std::async(std::launch::async,
                              [&] { return train_classifier(naive, naive_config); });
  const TextClassifier mixed_model = train_classifier(mixed, mixed_config);
  const TextClassifier naive_model = naive_fit.get();

  ComparisonResult out;
  out.mixed_predictions = mixed_model.predict(test);
  out.naive_predictions = naive_model.predict(test);

  const auto slices = default_slices(test, membership_threshold);
  out.mixed_report = bias_report(test, out.mixed_predictions, slices, model_config.label_threshold);
  out.naive_report = bias_report(test, out.naive_predictions, slices, model_config.label_threshold);
  out.mixed_stats = split_stats(mixed, spec_mixed.label_threshold, membership_threshold);
  out.naive_stats = split_stats(naive, spec_naive.label_threshold, membership_threshold);
  return out;
}

}  // namespace toxaudit
