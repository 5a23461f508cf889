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

#ifndef TOXAUDIT_LOGREG_H_
#define TOXAUDIT_LOGREG_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "toxaudit/tfidf.h"

namespace toxaudit {

struct TrainConfig {
  double learning_rate = 0.1;
  std::size_t batch_size = 1024;
  std::size_t max_epochs = 10;
  double l2_lambda = 1e-4;
  double tol = 1e-5;
  std::uint64_t seed = 0;
};

// Throws ValidationError for non-positive learning rate/batch size/epochs or
// negative lambda/tol.
void validate(const TrainConfig& config);

struct LogRegModel {
  std::vector<double> weights;
  double bias = 0.0;
  double l2_lambda = 0.0;

  std::size_t dimension() const { return weights.size(); }
  double decision(const SparseVector& x) const { return x.dot(weights) + bias; }

  bool operator==(const LogRegModel&) const = default;
};

double sigmoid(double z);

// log(1 + e^z) without overflow.
double softplus(double z);

// Mean binary cross-entropy plus (lambda/2)|w|^2 and its gradient. The bias
// is not regularized.
struct Objective {
  double loss = 0.0;
  std::vector<double> weight_grad;
  double bias_grad = 0.0;
};

Objective evaluate_objective(const LogRegModel& model, std::span<const SparseVector> vectors,
                             std::span<const std::uint8_t> labels);

struct TrainResult {
  LogRegModel model;
  // Full-data objective after each completed epoch.
  std::vector<double> epoch_loss;
};

// Mini-batch gradient descent from zero weights with seeded shuffling. Stops
// after max_epochs or when an epoch improves the objective by less than tol.
// Throws ValidationError on single-class labels, mismatched lengths or a
// non-finite loss (the message names the epoch).
TrainResult train_logreg(std::span<const SparseVector> vectors,
                         std::span<const std::uint8_t> labels, std::size_t dimension,
                         const TrainConfig& config);

// sigmoid(w.x + b) per row. Throws ValidationError when a vector's dimension
// differs from the model's.
std::vector<double> predict_scores(const LogRegModel& model,
                                   std::span<const SparseVector> vectors);

}  // namespace toxaudit

#endif  // TOXAUDIT_LOGREG_H_
