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

#include "toxaudit/logreg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "toxaudit/errors.h"
#include "toxaudit/kernels.h"

namespace toxaudit {
namespace {

void check_inputs(std::span<const SparseVector> vectors, std::span<const std::uint8_t> labels,
                  std::size_t dimension) {
  if (vectors.size() != labels.size()) {
    throw ValidationError("training: " + std::to_string(vectors.size()) + " vectors but " +
                          std::to_string(labels.size()) + " labels");
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dimension != dimension) {
      throw ValidationError("dimension mismatch: vector " + std::to_string(i) + " has dimension " +
                            std::to_string(vectors[i].dimension) + ", model has " +
                            std::to_string(dimension));
    }
  }
}

double data_loss(std::span<const double> z, std::span<const std::uint8_t> labels) {
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) sum += softplus(z[i]) - (labels[i] ? z[i] : 0.0);
  return sum / static_cast<double>(z.size());
}

double squared_norm(std::span<const double> w) {
  return std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
}

}  // namespace

void validate(const TrainConfig& config) {
  if (!(config.learning_rate > 0.0)) throw ValidationError("learning_rate must be > 0");
  if (config.batch_size == 0) throw ValidationError("batch_size must be >= 1");
  if (config.max_epochs == 0) throw ValidationError("max_epochs must be >= 1");
  if (!(config.l2_lambda >= 0.0)) throw ValidationError("l2_lambda must be >= 0");
  if (!(config.tol >= 0.0)) throw ValidationError("tol must be >= 0");
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

Objective evaluate_objective(const LogRegModel& model, std::span<const SparseVector> vectors,
                             std::span<const std::uint8_t> labels) {
  check_inputs(vectors, labels, model.dimension());
  const std::size_t n = vectors.size();
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<double> z(n);
  kernels::parallel::decision_values(model, vectors, rows, z);

  Objective out;
  out.loss = data_loss(z, labels) + 0.5 * model.l2_lambda * squared_norm(model.weights);
  out.weight_grad.assign(model.dimension(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (sigmoid(z[i]) - (labels[i] ? 1.0 : 0.0)) * inv_n;
    out.bias_grad += r;
    const SparseVector& x = vectors[i];
    for (std::size_t k = 0; k < x.nnz(); ++k) out.weight_grad[x.indices[k]] += r * x.weights[k];
  }
  for (std::size_t j = 0; j < model.dimension(); ++j) {
    out.weight_grad[j] += model.l2_lambda * model.weights[j];
  }
  return out;
}

TrainResult train_logreg(std::span<const SparseVector> vectors,
                         std::span<const std::uint8_t> labels, std::size_t dimension,
                         const TrainConfig& config) {
  validate(config);
  check_inputs(vectors, labels, dimension);
  if (vectors.empty()) throw ValidationError("training set is empty");
  const auto positives = std::count_if(labels.begin(), labels.end(), [](auto y) { return y != 0; });
  if (positives == 0 || static_cast<std::size_t>(positives) == labels.size()) {
    throw ValidationError("training labels contain a single class");
  }

  TrainResult result;
  LogRegModel& model = result.model;
  model.weights.assign(dimension, 0.0);
  model.l2_lambda = config.l2_lambda;

  const std::size_t n = vectors.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> all_rows = order;
  std::vector<double> z(std::max(n, config.batch_size));
  std::mt19937_64 rng(config.seed);

  auto full_loss = [&]() {
    kernels::parallel::decision_values(model, vectors, all_rows, std::span(z).first(n));
    return data_loss(std::span(z).first(n), labels) +
           0.5 * model.l2_lambda * squared_norm(model.weights);
  };

  double previous = full_loss();
  const double shrink = 1.0 - config.learning_rate * config.l2_lambda;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t end = std::min(n, start + config.batch_size);
      const auto batch = std::span<const std::size_t>(order).subspan(start, end - start);
      const auto batch_z = std::span(z).first(batch.size());
      kernels::parallel::decision_values(model, vectors, batch, batch_z);

      // w <- w - lr * (lambda * w + mean residual * x), with the residuals
      // taken at the pre-update weights.
      const double step = config.learning_rate / static_cast<double>(batch.size());
      if (shrink != 1.0) {
        for (double& w : model.weights) w *= shrink;
      }
      double bias_step = 0.0;
      for (std::size_t k = 0; k < batch.size(); ++k) {
        const std::size_t i = batch[k];
        const double r = sigmoid(batch_z[k]) - (labels[i] ? 1.0 : 0.0);
        bias_step += r;
        const SparseVector& x = vectors[i];
        for (std::size_t t = 0; t < x.nnz(); ++t) {
          model.weights[x.indices[t]] -= step * r * x.weights[t];
        }
      }
      model.bias -= step * bias_step;
    }

    const double loss = full_loss();
    if (!std::isfinite(loss)) {
      throw ValidationError("training diverged: non-finite loss at epoch " +
                            std::to_string(epoch));
    }
    result.epoch_loss.push_back(loss);
    if (previous - loss < config.tol) break;
    previous = loss;
  }
  return result;
}

std::vector<double> predict_scores(const LogRegModel& model,
                                   std::span<const SparseVector> vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dimension != model.dimension()) {
      throw ValidationError("dimension mismatch: vector " + std::to_string(i) + " has dimension " +
                            std::to_string(vectors[i].dimension) + ", model has " +
                            std::to_string(model.dimension()));
    }
  }
  std::vector<std::size_t> rows(vectors.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<double> scores(vectors.size());
  kernels::parallel::decision_values(model, vectors, rows, scores);
  for (double& s : scores) s = sigmoid(s);
  return scores;
}

}  // namespace toxaudit
