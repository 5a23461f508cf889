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

#include "toxaudit/kernels.h"

namespace toxaudit::kernels {
namespace {

const std::string& text_of(const std::string& s) { return s; }
const std::string& text_of(const CommentRecord& r) { return r.text; }

template <typename Doc>
std::vector<SparseVector> vectorize_serial(std::span<const Doc> docs, const Vocabulary& vocab) {
  std::vector<SparseVector> out(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) out[i] = vectorize(text_of(docs[i]), vocab);
  return out;
}

template <typename Doc>
std::vector<SparseVector> vectorize_parallel(std::span<const Doc> docs, const Vocabulary& vocab) {
  std::vector<SparseVector> out(docs.size());
  const auto n = static_cast<std::int64_t>(docs.size());
#pragma omp parallel for schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) out[i] = vectorize(text_of(docs[i]), vocab);
  return out;
}

}  // namespace

namespace serial {

std::vector<SparseVector> vectorize_corpus(std::span<const std::string> texts,
                                           const Vocabulary& vocab) {
  return vectorize_serial(texts, vocab);
}

std::vector<SparseVector> vectorize_corpus(std::span<const CommentRecord> records,
                                           const Vocabulary& vocab) {
  return vectorize_serial(records, vocab);
}

void decision_values(const LogRegModel& model, std::span<const SparseVector> vectors,
                     std::span<const std::size_t> rows, std::span<double> out) {
  for (std::size_t k = 0; k < rows.size(); ++k) out[k] = model.decision(vectors[rows[k]]);
}

std::vector<BiasRow> evaluate_slices(std::span<const double> scores,
                                     std::span<const std::uint8_t> toxic,
                                     std::span<const std::vector<std::uint8_t>> members) {
  std::vector<BiasRow> rows(members.size());
  for (std::size_t s = 0; s < members.size(); ++s) {
    rows[s] = evaluate_slice(scores, toxic, members[s]);
  }
  return rows;
}

}  // namespace serial

namespace parallel {

std::vector<SparseVector> vectorize_corpus(std::span<const std::string> texts,
                                           const Vocabulary& vocab) {
  return vectorize_parallel(texts, vocab);
}

std::vector<SparseVector> vectorize_corpus(std::span<const CommentRecord> records,
                                           const Vocabulary& vocab) {
  return vectorize_parallel(records, vocab);
}

void decision_values(const LogRegModel& model, std::span<const SparseVector> vectors,
                     std::span<const std::size_t> rows, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(static) if (n > 4096)
  for (std::int64_t k = 0; k < n; ++k) out[k] = model.decision(vectors[rows[k]]);
}

std::vector<BiasRow> evaluate_slices(std::span<const double> scores,
                                     std::span<const std::uint8_t> toxic,
                                     std::span<const std::vector<std::uint8_t>> members) {
  std::vector<BiasRow> rows(members.size());
  const auto n = static_cast<std::int64_t>(members.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t s = 0; s < n; ++s) rows[s] = evaluate_slice(scores, toxic, members[s]);
  return rows;
}

}  // namespace parallel

}  // namespace toxaudit::kernels
