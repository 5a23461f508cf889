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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "toxaudit/errors.h"
#include "toxaudit/metrics.h"

namespace toxaudit {
namespace {

SparseVector dense_to_sparse(const std::vector<double>& x) {
  SparseVector v;
  v.dimension = x.size();
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) {
      v.indices.push_back(static_cast<std::uint32_t>(j));
      v.weights.push_back(x[j]);
    }
  }
  return v;
}

struct Instance {
  std::vector<std::vector<double>> dense;
  std::vector<SparseVector> vectors;
  std::vector<std::uint8_t> labels;
};

Instance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Instance inst;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x(dim, 0.0);
    for (double& v : x) {
      if (rng() % 3 != 0) v = unit(rng);
    }
    inst.dense.push_back(x);
    inst.vectors.push_back(dense_to_sparse(x));
    inst.labels.push_back(static_cast<std::uint8_t>(rng() % 2));
  }
  return inst;
}

// Independent dense evaluation of mean BCE + (lambda/2)|w|^2.
double reference_loss(const Instance& inst, const std::vector<double>& w, double b, double lambda) {
  double sum = 0.0;
  for (std::size_t i = 0; i < inst.dense.size(); ++i) {
    double z = b;
    for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * inst.dense[i][j];
    const double p = 1.0 / (1.0 + std::exp(-z));
    sum += inst.labels[i] ? -std::log(p) : -std::log(1.0 - p);
  }
  double sq = 0.0;
  for (double v : w) sq += v * v;
  return sum / static_cast<double>(inst.dense.size()) + 0.5 * lambda * sq;
}

TEST(Sigmoid, ClosedForms) {
  EXPECT_EQ(sigmoid(0.0), 0.5);
  EXPECT_NEAR(sigmoid(std::log(3.0)), 0.75, 1e-15);
  EXPECT_NEAR(sigmoid(-std::log(3.0)), 0.25, 1e-15);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_NEAR(softplus(1000.0), 1000.0, 1e-12);
  EXPECT_NEAR(softplus(0.0), std::log(2.0), 1e-15);
}

TEST(Objective, InitialBiasGradientClosedForm) {
  std::mt19937_64 rng(1);
  const Instance inst = random_instance(rng, 20, 5);
  LogRegModel zero{std::vector<double>(5, 0.0), 0.0, 0.1};
  double mean_y = 0.0;
  for (auto y : inst.labels) mean_y += y;
  mean_y /= 20.0;
  EXPECT_NEAR(evaluate_objective(zero, inst.vectors, inst.labels).bias_grad, 0.5 - mean_y, 1e-15);
}

TEST(Objective, LossMatchesDenseReference) {
  std::mt19937_64 rng(2);
  const Instance inst = random_instance(rng, 20, 5);
  LogRegModel m{{0.3, -0.2, 0.5, 0.0, 1.1}, -0.4, 0.01};
  EXPECT_NEAR(evaluate_objective(m, inst.vectors, inst.labels).loss,
              reference_loss(inst, m.weights, m.bias, m.l2_lambda), 1e-12);
}

TEST(Objective, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Instance inst = random_instance(rng, 20, 5);
    LogRegModel m;
    for (int j = 0; j < 5; ++j) m.weights.push_back(unit(rng));
    m.bias = unit(rng);
    m.l2_lambda = 0.05 * (unit(rng) + 1.0);
    const Objective obj = evaluate_objective(m, inst.vectors, inst.labels);

    const double h = 1e-5;
    double diff_sq = 0.0;
    double norm_sq = 0.0;
    for (int j = 0; j <= 5; ++j) {
      std::vector<double> wp = m.weights, wm = m.weights;
      double bp = m.bias, bm = m.bias;
      if (j < 5) {
        wp[j] += h;
        wm[j] -= h;
      } else {
        bp += h;
        bm -= h;
      }
      const double numeric = (reference_loss(inst, wp, bp, m.l2_lambda) -
                              reference_loss(inst, wm, bm, m.l2_lambda)) /
                             (2.0 * h);
      const double analytic = j < 5 ? obj.weight_grad[j] : obj.bias_grad;
      diff_sq += (numeric - analytic) * (numeric - analytic);
      norm_sq += analytic * analytic;
    }
    EXPECT_LT(std::sqrt(diff_sq / norm_sq), 1e-5);
  }
}

TEST(Train, SeparableTwoPointSet) {
  const std::vector<SparseVector> xs = {dense_to_sparse({1.0, 0.0}), dense_to_sparse({0.0, 1.0})};
  const std::vector<std::uint8_t> ys = {1, 0};
  TrainConfig config;
  config.max_epochs = 200;
  const TrainResult r = train_logreg(xs, ys, 2, config);
  const auto scores = predict_scores(r.model, xs);
  const double pos[] = {scores[0]};
  const double neg[] = {scores[1]};
  EXPECT_EQ(auc(pos, neg).value, 1.0);
}

TEST(Train, FullBatchLossNonIncreasing) {
  std::mt19937_64 rng(4);
  const Instance inst = random_instance(rng, 200, 10);
  TrainConfig config;
  config.batch_size = 1000;
  config.max_epochs = 50;
  config.tol = 0.0;
  const TrainResult r = train_logreg(inst.vectors, inst.labels, 10, config);
  ASSERT_GE(r.epoch_loss.size(), 2u);
  for (std::size_t e = 1; e < r.epoch_loss.size(); ++e) {
    EXPECT_LE(r.epoch_loss[e], r.epoch_loss[e - 1]);
  }
}

TEST(Train, StopsWhenImprovementBelowTolerance) {
  std::mt19937_64 rng(5);
  const Instance inst = random_instance(rng, 100, 5);
  TrainConfig config;
  config.max_epochs = 1000;
  config.tol = 1e-3;
  const TrainResult r = train_logreg(inst.vectors, inst.labels, 5, config);
  EXPECT_LT(r.epoch_loss.size(), 1000u);
}

TEST(Train, StrongRegularizationShrinksWeights) {
  std::mt19937_64 rng(6);
  const Instance inst = random_instance(rng, 100, 8);
  TrainConfig config;
  config.l2_lambda = 5.0;
  config.max_epochs = 100;
  config.batch_size = 100;
  const TrainResult r = train_logreg(inst.vectors, inst.labels, 8, config);
  double norm = 0.0;
  for (double w : r.model.weights) norm += w * w;
  EXPECT_LT(std::sqrt(norm), 0.02);
  for (double s : predict_scores(r.model, inst.vectors)) {
    EXPECT_NEAR(s, sigmoid(r.model.bias), 0.01);
  }
}

TEST(Train, DeterministicForFixedSeed) {
  std::mt19937_64 rng(7);
  const Instance inst = random_instance(rng, 300, 12);
  TrainConfig config;
  config.batch_size = 16;
  config.seed = 99;
  const TrainResult a = train_logreg(inst.vectors, inst.labels, 12, config);
  const TrainResult b = train_logreg(inst.vectors, inst.labels, 12, config);
  EXPECT_EQ(a.model, b.model);
  EXPECT_EQ(predict_scores(a.model, inst.vectors), predict_scores(b.model, inst.vectors));
}

TEST(Train, RejectsSingleClass) {
  const std::vector<SparseVector> xs = {dense_to_sparse({1.0}), dense_to_sparse({0.5})};
  const std::vector<std::uint8_t> ys = {1, 1};
  EXPECT_THROW(train_logreg(xs, ys, 1, TrainConfig{}), ValidationError);
}

TEST(Train, RejectsBadConfig) {
  const std::vector<SparseVector> xs = {dense_to_sparse({1.0}), dense_to_sparse({0.5})};
  const std::vector<std::uint8_t> ys = {1, 0};
  TrainConfig config;
  config.batch_size = 0;
  EXPECT_THROW(train_logreg(xs, ys, 1, config), ValidationError);
}

TEST(Train, DivergenceReportsEpoch) {
  const std::vector<SparseVector> xs = {dense_to_sparse({1.0}), dense_to_sparse({-1.0})};
  const std::vector<std::uint8_t> ys = {0, 1};
  TrainConfig config;
  config.learning_rate = 1e308;
  config.l2_lambda = 1.0;
  try {
    train_logreg(xs, ys, 1, config);
    FAIL() << "expected divergence";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("epoch 1"), std::string::npos) << e.what();
  }
}

TEST(Predict, ZeroModelGivesOneHalf) {
  const LogRegModel zero{std::vector<double>(3, 0.0), 0.0, 0.0};
  const std::vector<SparseVector> xs = {dense_to_sparse({1.0, 0.0, 2.0}),
                                        dense_to_sparse({0.0, 0.0, 0.0})};
  for (double s : predict_scores(zero, xs)) EXPECT_EQ(s, 0.5);
}

TEST(Predict, MonotoneInDecisionValue) {
  const LogRegModel m{{0.5, -1.0}, 0.2, 0.0};
  const std::vector<SparseVector> xs = {dense_to_sparse({0.1, 0.0}), dense_to_sparse({0.4, 0.0}),
                                        dense_to_sparse({0.9, 0.0})};
  const auto s = predict_scores(m, xs);
  EXPECT_LT(s[0], s[1]);
  EXPECT_LT(s[1], s[2]);
}

TEST(Predict, DimensionMismatch) {
  const LogRegModel m{{0.5, -1.0}, 0.0, 0.0};
  const std::vector<SparseVector> xs = {dense_to_sparse({1.0, 0.0, 1.0})};
  EXPECT_THROW(predict_scores(m, xs), ValidationError);
}

}  // namespace
}  // namespace toxaudit
