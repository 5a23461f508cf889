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

#ifndef TOXAUDIT_BASELINE_MODEL_H_
#define TOXAUDIT_BASELINE_MODEL_H_

#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "toxaudit/dataset.h"
#include "toxaudit/logreg.h"
#include "toxaudit/predictions.h"
#include "toxaudit/tfidf.h"

namespace toxaudit {

struct ModelConfig {
  TrainConfig train;
  std::size_t max_features = kDefaultMaxFeatures;
  double label_threshold = kDefaultLabelThreshold;
};

// TFIDF features feeding an L2-regularized logistic regression.
struct TextClassifier {
  Vocabulary vocabulary;
  LogRegModel model;
  // Per-epoch objective from training; not persisted.
  std::vector<double> epoch_loss;

  std::vector<double> score_records(const Dataset& dataset) const;
  PredictionSet predict(const Dataset& dataset) const;
};

TextClassifier train_classifier(const Dataset& train, const ModelConfig& config);

// Text format:
//   line 1: <vocab size>,<bias>,<lambda>,<n_docs>
//   then one line per feature: <term>,<weight>,<doc_freq>
// Doubles are written in shortest round-trip form, so load(save(m)) == m.
void save_classifier(std::ostream& out, const TextClassifier& classifier);
TextClassifier read_classifier(std::istream& in);

void save_classifier(const std::filesystem::path& path, const TextClassifier& classifier);
TextClassifier load_classifier(const std::filesystem::path& path);

}  // namespace toxaudit

#endif  // TOXAUDIT_BASELINE_MODEL_H_
