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

#include "toxaudit/baseline_model.h"

#include <fstream>
#include <string>

#include "toxaudit/csv.h"
#include "toxaudit/errors.h"
#include "toxaudit/kernels.h"

namespace toxaudit {
namespace {

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) {
    throw ValidationError("model file: bad " + what + " '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

double parse_real(const std::string& text, const std::string& what) {
  auto value = csv::parse_double(text);
  if (!value) throw ValidationError("model file: bad " + what + " '" + text + "'");
  return *value;
}

}  // namespace

std::vector<double> TextClassifier::score_records(const Dataset& dataset) const {
  const auto vectors = kernels::parallel::vectorize_corpus(
      std::span<const CommentRecord>(dataset.records()), vocabulary);
  return predict_scores(model, vectors);
}

PredictionSet TextClassifier::predict(const Dataset& dataset) const {
  const std::vector<double> scores = score_records(dataset);
  PredictionSet out;
  for (std::size_t i = 0; i < dataset.size(); ++i) out.add(dataset[i].id, scores[i]);
  return out;
}

TextClassifier train_classifier(const Dataset& train, const ModelConfig& config) {
  validate(config.train);
  if (config.max_features == 0) throw ValidationError("max_features must be >= 1");
  std::vector<std::string> texts;
  texts.reserve(train.size());
  for (const auto& r : train.records()) texts.push_back(r.text);

  TextClassifier out;
  out.vocabulary = fit_vocabulary(texts, config.max_features);
  const auto vectors = kernels::parallel::vectorize_corpus(
      std::span<const std::string>(texts), out.vocabulary);
  std::vector<std::uint8_t> labels(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    labels[i] = is_toxic(train[i], config.label_threshold) ? 1 : 0;
  }
  TrainResult result = train_logreg(vectors, labels, out.vocabulary.size(), config.train);
  out.model = std::move(result.model);
  out.epoch_loss = std::move(result.epoch_loss);
  return out;
}

void save_classifier(std::ostream& out, const TextClassifier& classifier) {
  const Vocabulary& vocab = classifier.vocabulary;
  out << vocab.size() << ',' << csv::format_double(classifier.model.bias) << ','
      << csv::format_double(classifier.model.l2_lambda) << ',' << vocab.n_docs() << '\n';
  for (std::size_t j = 0; j < vocab.size(); ++j) {
    out << vocab.terms()[j] << ',' << csv::format_double(classifier.model.weights[j]) << ','
        << vocab.doc_freq()[j] << '\n';
  }
}

TextClassifier read_classifier(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || header->size() != 4) {
    throw ValidationError("model file: header must be '<vocab size>,<bias>,<lambda>,<n_docs>'");
  }
  const std::size_t size = parse_count((*header)[0], "vocabulary size");
  TextClassifier out;
  out.model.bias = parse_real((*header)[1], "bias");
  out.model.l2_lambda = parse_real((*header)[2], "lambda");
  const std::size_t n_docs = parse_count((*header)[3], "document count");

  std::vector<std::string> terms;
  std::vector<std::size_t> doc_freq;
  terms.reserve(size);
  doc_freq.reserve(size);
  out.model.weights.reserve(size);
  while (auto row = reader.next()) {
    if (row->size() != 3) {
      throw ValidationError("model file: malformed feature line " +
                            std::to_string(reader.record_line()));
    }
    terms.push_back((*row)[0]);
    out.model.weights.push_back(parse_real((*row)[1], "weight"));
    doc_freq.push_back(parse_count((*row)[2], "document frequency"));
  }
  if (terms.size() != size) {
    throw ValidationError("model file: header declares " + std::to_string(size) +
                          " features, found " + std::to_string(terms.size()));
  }
  out.vocabulary = Vocabulary(std::move(terms), std::move(doc_freq), n_docs);
  return out;
}

void save_classifier(const std::filesystem::path& path, const TextClassifier& classifier) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write model '" + path.string() + "'");
  save_classifier(out, classifier);
  if (!out) throw IoError("failed writing model '" + path.string() + "'");
}

TextClassifier load_classifier(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model '" + path.string() + "'");
  return read_classifier(in);
}

}  // namespace toxaudit
