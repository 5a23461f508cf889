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

#ifndef TOXAUDIT_TESTS_TEST_UTIL_H_
#define TOXAUDIT_TESTS_TEST_UTIL_H_

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "toxaudit/dataset.h"
#include "toxaudit/predictions.h"

namespace toxaudit::testing {

// Pair-counting AUC: [#(p > n) + 0.5 #(p == n)] / (|P| |N|). O(n^2), used
// only as an oracle for the rank-based implementation.
inline double brute_force_auc(std::span<const double> pos, std::span<const double> neg) {
  double wins = 0.0;
  for (double p : pos) {
    for (double n : neg) {
      if (p > n) {
        wins += 1.0;
      } else if (p == n) {
        wins += 0.5;
      }
    }
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

struct Row {
  std::string id;
  double toxicity;
  std::map<std::string, double> identities;
  std::string text = "";
};

// Builds a dataset over `identities` from sparse rows.
inline Dataset make_dataset(const std::vector<std::string>& identities,
                            const std::vector<Row>& rows) {
  std::vector<CommentRecord> records;
  for (const auto& row : rows) {
    CommentRecord r;
    r.id = row.id;
    r.text = row.text;
    r.toxicity = row.toxicity;
    r.identities.assign(identities.size(), 0.0);
    for (const auto& [name, value] : row.identities) {
      for (std::size_t k = 0; k < identities.size(); ++k) {
        if (identities[k] == name) r.identities[k] = value;
      }
    }
    records.push_back(std::move(r));
  }
  return Dataset(identities, std::move(records));
}

inline PredictionSet make_predictions(const std::vector<std::pair<std::string, double>>& scores) {
  PredictionSet p;
  for (const auto& [id, s] : scores) p.add(id, s);
  return p;
}

// Scores drawn from a small grid so that ties are frequent.
inline std::vector<double> tied_scores(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> level(0, 20);
  std::vector<double> out(n);
  for (double& s : out) s = level(rng) / 20.0;
  return out;
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("toxaudit_" + tag + "_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace toxaudit::testing

#endif  // TOXAUDIT_TESTS_TEST_UTIL_H_
