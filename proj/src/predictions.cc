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

#include "toxaudit/predictions.h"

#include <fstream>

#include "toxaudit/csv.h"
#include "toxaudit/errors.h"

namespace toxaudit {
namespace {

constexpr std::size_t kMaxListedIds = 20;

std::string list_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size() && i < kMaxListedIds; ++i) {
    if (i > 0) out += ", ";
    out += ids[i];
  }
  if (ids.size() > kMaxListedIds) {
    out += ", ... (" + std::to_string(ids.size() - kMaxListedIds) + " more)";
  }
  return out;
}

}  // namespace

void PredictionSet::add(std::string id, double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw ValidationError("score for id '" + id + "' outside [0,1]");
  }
  if (!index_.emplace(id, entries_.size()).second) {
    throw ValidationError("duplicate prediction id '" + id + "'");
  }
  entries_.emplace_back(std::move(id), score);
}

std::optional<double> PredictionSet::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return entries_[it->second].second;
}

double PredictionSet::at(std::string_view id) const {
  auto score = find(id);
  if (!score) throw ValidationError("missing prediction for id '" + std::string(id) + "'");
  return *score;
}

PredictionSet read_predictions(std::istream& in, std::string_view source_name) {
  const std::string where(source_name);
  csv::Reader reader(in);
  auto header = reader.next();
  if (header && !header->empty() && header->front().starts_with("\xEF\xBB\xBF")) {
    header->front().erase(0, 3);
  }
  if (!header || header->size() != 2 || (*header)[0] != "id" || (*header)[1] != "score") {
    throw ValidationError(where + ": expected header 'id,score'");
  }
  PredictionSet out;
  while (auto row = reader.next()) {
    const std::size_t line = reader.record_line();
    if (row->size() == 1 && row->front().empty()) continue;
    if (row->size() != 2) {
      throw ValidationError(where + ": malformed row " + std::to_string(line));
    }
    auto score = csv::parse_double((*row)[1]);
    if (!score) {
      throw ValidationError(where + ": row " + std::to_string(line) + ": score '" + (*row)[1] +
                            "' is not a number");
    }
    if (!(*score >= 0.0 && *score <= 1.0)) {
      throw ValidationError(where + ": row " + std::to_string(line) + ": score " + (*row)[1] +
                            " outside [0,1]");
    }
    if (out.find((*row)[0])) {
      throw ValidationError(where + ": row " + std::to_string(line) + ": duplicate id '" +
                            (*row)[0] + "'");
    }
    out.add(std::move((*row)[0]), *score);
  }
  return out;
}

void write_predictions(std::ostream& out, const PredictionSet& predictions) {
  out << "id,score\n";
  for (const auto& [id, score] : predictions.entries()) {
    out << csv::escape(id) << ',' << csv::format_double(score) << '\n';
  }
}

void check_coverage(const PredictionSet& predictions, const Dataset& dataset) {
  std::vector<std::string> missing;
  for (const auto& r : dataset.records()) {
    if (!predictions.find(r.id)) missing.push_back(r.id);
  }
  std::vector<std::string> extra;
  for (const auto& [id, score] : predictions.entries()) {
    if (!dataset.contains_id(id)) extra.push_back(id);
  }
  if (missing.empty() && extra.empty()) return;
  std::string message = "predictions do not match dataset ids";
  if (!missing.empty()) message += "; missing ids: " + list_ids(missing);
  if (!extra.empty()) message += "; extra ids: " + list_ids(extra);
  throw ValidationError(message);
}

PredictionSet import_predictions(const std::filesystem::path& path, const Dataset& dataset) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open predictions '" + path.string() + "'");
  PredictionSet out = read_predictions(in, path.string());
  check_coverage(out, dataset);
  return out;
}

std::vector<double> aligned_scores(const Dataset& dataset, const PredictionSet& predictions) {
  std::vector<double> scores;
  scores.reserve(dataset.size());
  for (const auto& r : dataset.records()) scores.push_back(predictions.at(r.id));
  return scores;
}

}  // namespace toxaudit
