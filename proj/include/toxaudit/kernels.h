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

#ifndef TOXAUDIT_KERNELS_H_
#define TOXAUDIT_KERNELS_H_

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel; the two return
// bit-identical results for any thread count. Library code calls the
// parallel versions; tests and the benchmark compare them.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "toxaudit/dataset.h"
#include "toxaudit/logreg.h"
#include "toxaudit/metrics.h"
#include "toxaudit/tfidf.h"

namespace toxaudit::kernels {

namespace serial {

std::vector<SparseVector> vectorize_corpus(std::span<const std::string> texts,
                                           const Vocabulary& vocab);
std::vector<SparseVector> vectorize_corpus(std::span<const CommentRecord> records,
                                           const Vocabulary& vocab);

// out[k] = w . x[rows[k]] + b
void decision_values(const LogRegModel& model, std::span<const SparseVector> vectors,
                     std::span<const std::size_t> rows, std::span<double> out);

// One BiasRow per membership mask; identities are left empty.
std::vector<BiasRow> evaluate_slices(std::span<const double> scores,
                                     std::span<const std::uint8_t> toxic,
                                     std::span<const std::vector<std::uint8_t>> members);

}  // namespace serial

namespace parallel {

std::vector<SparseVector> vectorize_corpus(std::span<const std::string> texts,
                                           const Vocabulary& vocab);
std::vector<SparseVector> vectorize_corpus(std::span<const CommentRecord> records,
                                           const Vocabulary& vocab);

void decision_values(const LogRegModel& model, std::span<const SparseVector> vectors,
                     std::span<const std::size_t> rows, std::span<double> out);

std::vector<BiasRow> evaluate_slices(std::span<const double> scores,
                                     std::span<const std::uint8_t> toxic,
                                     std::span<const std::vector<std::uint8_t>> members);

}  // namespace parallel

}  // namespace toxaudit::kernels

#endif  // TOXAUDIT_KERNELS_H_
