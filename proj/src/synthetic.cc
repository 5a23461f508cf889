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

#include "toxaudit/synthetic.h"

#include <random>

#include "toxaudit/errors.h"

namespace toxaudit::synthetic {
namespace {

constexpr int kNeutralWords = 300;
constexpr int kGenericAbuseWords = 30;
constexpr int kPlantedAbuseWords = 10;

}  // namespace

std::string mention_word(const std::string& identity) {
  const auto cut = identity.find('_');
  return cut == std::string::npos ? identity : identity.substr(0, cut);
}

Dataset make_corpus(const CorpusConfig& config) {
  const std::size_t n_ids = config.identities.size();
  if (n_ids == 0) throw ValidationError("synthetic corpus needs at least one identity");
  std::size_t planted = n_ids;
  for (std::size_t k = 0; k < n_ids; ++k) {
    if (config.identities[k] == config.planted_identity) planted = k;
  }
  if (planted == n_ids) {
    throw ValidationError("planted identity '" + config.planted_identity + "' is not tracked");
  }

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto chance = [&](double p) { return unit(rng) < p; };
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto between = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  std::vector<CommentRecord> records;
  records.reserve(config.n_records);
  for (std::size_t i = 0; i < config.n_records; ++i) {
    CommentRecord r;
    r.id = config.id_prefix + std::to_string(i);
    r.identities.assign(n_ids, 0.0);

    std::string text;
    auto add_word = [&](const std::string& w) {
      if (!text.empty()) text.push_back(' ');
      text += w;
    };

    std::size_t target = n_ids;
    if (chance(config.identity_rate)) {
      target = static_cast<std::size_t>(pick(static_cast<int>(n_ids)));
      r.identities[target] = between(0.5, 1.0);
    } else if (chance(config.weak_annotation_rate)) {
      r.identities[static_cast<std::size_t>(pick(static_cast<int>(n_ids)))] = between(0.01, 0.2);
    }
    const bool member = target < n_ids;
    const bool toxic = chance(member ? config.subgroup_toxic_rate : config.background_toxic_rate);
    r.toxicity = toxic ? between(0.5, 1.0) : (chance(0.6) ? 0.0 : between(0.0, 0.45));

    const int n_neutral = 6 + pick(7);
    for (int w = 0; w < n_neutral; ++w) add_word("word" + std::to_string(pick(kNeutralWords)));
    if (member) {
      add_word(mention_word(config.identities[target]));
      if (chance(0.5)) add_word(mention_word(config.identities[target]));
    }
    if (toxic && !chance(config.label_noise)) {
      for (int w = 0; w < 2; ++w) {
        if (target == planted) {
          add_word("slur" + std::to_string(pick(kPlantedAbuseWords)));
        } else {
          add_word("abuse" + std::to_string(pick(kGenericAbuseWords)));
        }
      }
    } else if (!toxic && chance(config.label_noise)) {
      add_word("abuse" + std::to_string(pick(kGenericAbuseWords)));
    }
    r.text = std::move(text);
    records.push_back(std::move(r));
  }
  return Dataset(config.identities, std::move(records));
}

}  // namespace toxaudit::synthetic
