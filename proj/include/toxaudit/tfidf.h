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

#ifndef TOXAUDIT_TFIDF_H_
#define TOXAUDIT_TFIDF_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace toxaudit {

inline constexpr std::size_t kDefaultMaxFeatures = 50000;

// Lowercases ASCII letters and splits on every byte that is not an ASCII
// letter or digit. Bytes >= 0x80 are kept inside tokens so multi-byte UTF-8
// words survive intact.
std::vector<std::string> tokenize(std::string_view text);

class Vocabulary {
 public:
  Vocabulary() = default;
  // `terms` must be unique and every doc_freq in [1, n_docs]; throws
  // ValidationError otherwise.
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> doc_freq,
             std::size_t n_docs);

  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& doc_freq() const { return doc_freq_; }
  std::size_t n_docs() const { return n_docs_; }
  std::size_t size() const { return terms_.size(); }

  std::optional<std::uint32_t> find(std::string_view term) const;
  // ln((1 + n_docs) / (1 + df)) + 1
  double idf(std::size_t index) const { return idf_[index]; }

  bool operator==(const Vocabulary& other) const {
    return terms_ == other.terms_ && doc_freq_ == other.doc_freq_ && n_docs_ == other.n_docs_;
  }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> doc_freq_;
  std::size_t n_docs_ = 0;
  std::vector<double> idf_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// Counts document frequencies and keeps the `max_features` most frequent
// terms (ties broken lexicographically). Terms are stored in lexicographic
// order. Throws ValidationError on an empty corpus or empty vocabulary.
Vocabulary fit_vocabulary(std::span<const std::string> corpus,
                          std::size_t max_features = kDefaultMaxFeatures);

// Sparse row with strictly increasing indices.
struct SparseVector {
  std::size_t dimension = 0;
  std::vector<std::uint32_t> indices;
  std::vector<double> weights;

  std::size_t nnz() const { return indices.size(); }
  double dot(std::span<const double> dense) const;
  double norm() const;
};

// Raw term counts times idf, then L2-normalized. Out-of-vocabulary tokens are
// ignored; a text with none in the vocabulary maps to the zero vector.
SparseVector vectorize(std::string_view text, const Vocabulary& vocab);

}  // namespace toxaudit

#endif  // TOXAUDIT_TFIDF_H_
