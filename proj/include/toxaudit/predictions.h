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

#ifndef TOXAUDIT_PREDICTIONS_H_
#define TOXAUDIT_PREDICTIONS_H_

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "toxaudit/dataset.h"

namespace toxaudit {

// Classifier scores keyed by record id. Insertion order is kept so that
// written files are stable.
class PredictionSet {
 public:
  // Throws ValidationError on a duplicate id or a score outside [0,1].
  void add(std::string id, double score);

  std::optional<double> find(std::string_view id) const;
  // Throws ValidationError naming the id when it is absent.
  double at(std::string_view id) const;

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::pair<std::string, double>>& entries() const { return entries_; }

  bool operator==(const PredictionSet& other) const { return entries_ == other.entries_; }

 private:
  std::vector<std::pair<std::string, double>> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Parses `id,score` CSV. Errors carry the source row number.
PredictionSet read_predictions(std::istream& in, std::string_view source_name = "<stream>");

void write_predictions(std::ostream& out, const PredictionSet& predictions);

// Reads a prediction file and checks it covers `dataset` exactly. Missing
// and extra ids are listed in the ValidationError message.
PredictionSet import_predictions(const std::filesystem::path& path, const Dataset& dataset);

// Verifies exact id coverage of an in-memory set.
void check_coverage(const PredictionSet& predictions, const Dataset& dataset);

// Scores in dataset order. Throws ValidationError naming the first missing id.
std::vector<double> aligned_scores(const Dataset& dataset, const PredictionSet& predictions);

}  // namespace toxaudit

#endif  // TOXAUDIT_PREDICTIONS_H_
