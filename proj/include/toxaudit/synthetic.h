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

#ifndef TOXAUDIT_SYNTHETIC_H_
#define TOXAUDIT_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "toxaudit/dataset.h"

namespace toxaudit::synthetic {

// Generator for labeled corpora with a planted identity bias: toxic comments
// aimed at `planted_identity` use a dedicated abusive vocabulary that never
// appears elsewhere, so a model that never sees identity-targeted training
// data cannot recognise them.
struct CorpusConfig {
  std::size_t n_records = 1000;
  std::string id_prefix = "c";
  std::vector<std::string> identities = default_identities();
  std::string planted_identity = "muslim";
  // Fraction of records annotated >= 0.5 for one identity.
  double identity_rate = 0.3;
  // Fraction of the remaining records carrying a weak (< 0.25) annotation.
  double weak_annotation_rate = 0.2;
  double background_toxic_rate = 0.12;
  double subgroup_toxic_rate = 0.25;
  // Chance that a toxic comment carries no abusive words, and that a clean
  // comment carries one.
  double label_noise = 0.08;
  std::uint64_t seed = 1;
};

Dataset make_corpus(const CorpusConfig& config);

// Word used in the text of comments that mention `identity`.
std::string mention_word(const std::string& identity);

}  // namespace toxaudit::synthetic

#endif  // TOXAUDIT_SYNTHETIC_H_
