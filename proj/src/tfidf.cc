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

#include "toxaudit/tfidf.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include "toxaudit/errors.h"

namespace toxaudit {
namespace {

bool is_token_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_token_byte(c)) {
      current.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch);
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
                       std::size_t n_docs)
    : terms_(std::move(terms)), doc_freq_(std::move(doc_freq)), n_docs_(n_docs) {
  if (terms_.size() != doc_freq_.size()) {
    throw ValidationError("vocabulary: terms and doc_freq differ in length");
  }
  idf_.reserve(terms_.size());
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (doc_freq_[i] < 1 || doc_freq_[i] > n_docs_) {
      throw ValidationError("vocabulary: doc_freq of '" + terms_[i] + "' outside [1, n_docs]");
    }
    if (!index_.emplace(terms_[i], static_cast<std::uint32_t>(i)).second) {
      throw ValidationError("vocabulary: duplicate term '" + terms_[i] + "'");
    }
    idf_.push_back(std::log((1.0 + static_cast<double>(n_docs_)) /
                            (1.0 + static_cast<double>(doc_freq_[i]))) +
                   1.0);
  }
}

std::optional<std::uint32_t> Vocabulary::find(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary fit_vocabulary(std::span<const std::string> corpus, std::size_t max_features) {
  if (corpus.empty()) throw ValidationError("cannot fit a vocabulary on an empty corpus");
  std::unordered_map<std::string, std::size_t> df;
  std::unordered_set<std::string> seen;
  for (const auto& doc : corpus) {
    seen.clear();
    for (auto& token : tokenize(doc)) seen.insert(std::move(token));
    for (const auto& token : seen) ++df[token];
  }
  if (df.empty()) throw ValidationError("corpus produced an empty vocabulary");

  std::vector<std::pair<std::string, std::size_t>> ranked(df.begin(), df.end());
  auto by_frequency = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (ranked.size() > max_features) {
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(max_features),
                      ranked.end(), by_frequency);
    ranked.resize(max_features);
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<std::string> terms;
  std::vector<std::size_t> doc_freq;
  terms.reserve(ranked.size());
  doc_freq.reserve(ranked.size());
  for (auto& [term, count] : ranked) {
    terms.push_back(std::move(term));
    doc_freq.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(doc_freq), corpus.size());
}

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (std::size_t k = 0; k < indices.size(); ++k) sum += weights[k] * dense[indices[k]];
  return sum;
}

double SparseVector::norm() const {
  double sq = 0.0;
  for (double w : weights) sq += w * w;
  return std::sqrt(sq);
}

SparseVector vectorize(std::string_view text, const Vocabulary& vocab) {
  std::map<std::uint32_t, std::size_t> counts;
  for (const auto& token : tokenize(text)) {
    if (auto idx = vocab.find(token)) ++counts[*idx];
  }
  SparseVector out;
  out.dimension = vocab.size();
  out.indices.reserve(counts.size());
  out.weights.reserve(counts.size());
  for (const auto& [idx, tf] : counts) {
    out.indices.push_back(idx);
    out.weights.push_back(static_cast<double>(tf) * vocab.idf(idx));
  }
  const double n = out.norm();
  if (n > 0.0) {
    for (double& w : out.weights) w /= n;
  }
  return out;
}

}  // namespace toxaudit
