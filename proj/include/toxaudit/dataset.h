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

#ifndef TOXAUDIT_DATASET_H_
#define TOXAUDIT_DATASET_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace toxaudit {

// The nine identity columns audited by default, in report-column order.
inline constexpr std::array<std::string_view, 9> kDefaultIdentities = {
    "homosexual_gay_or_lesbian", "black",  "white",
    "muslim",                    "jewish", "female",
    "psychiatric_or_mental_illness", "male", "christian"};

std::vector<std::string> default_identities();

inline constexpr double kDefaultLabelThreshold = 0.5;
inline constexpr double kDefaultMembershipThreshold = 0.5;

// One labeled comment. `identities` is dense and aligned with the owning
// Dataset's identity list; absent annotations are stored as 0.0.
struct CommentRecord {
  std::string id;
  std::string text;
  double toxicity = 0.0;
  std::vector<double> identities;
};

enum class BinaryLabel { kNonToxic, kToxic };

// Toxic iff toxicity >= label_threshold.
BinaryLabel binarize(const CommentRecord& record, double label_threshold = kDefaultLabelThreshold);

inline bool is_toxic(const CommentRecord& record, double label_threshold = kDefaultLabelThreshold) {
  return binarize(record, label_threshold) == BinaryLabel::kToxic;
}

// Max annotation over the tracked identities, 0.0 when none are set.
double identity_targeted(const CommentRecord& record);

struct SubgroupSlice {
  std::string identity;
  double membership_threshold = kDefaultMembershipThreshold;
};

// Indices into Dataset::records(). Both lists are ascending.
struct Partition {
  std::vector<std::size_t> subgroup;
  std::vector<std::size_t> background;
};

// An immutable, validated collection of comments.
class Dataset {
 public:
  Dataset() = default;

  // Throws ValidationError on duplicate/empty ids, values outside [0,1],
  // duplicate identity names or records whose annotation vector does not
  // match `identities` in length.
  Dataset(std::vector<std::string> identities, std::vector<CommentRecord> records);

  const std::vector<CommentRecord>& records() const { return records_; }
  const std::vector<std::string>& identities() const { return identities_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const CommentRecord& operator[](std::size_t i) const { return records_[i]; }

  // Throws ValidationError for an identity that is not tracked.
  std::size_t identity_index(std::string_view identity) const;

  bool contains_id(std::string_view id) const;

  // New dataset holding records at `indices`, in the given order.
  Dataset select(std::span<const std::size_t> indices) const;

  bool operator==(const Dataset& other) const;

 private:
  std::vector<std::string> identities_;
  std::vector<CommentRecord> records_;
  std::unordered_map<std::string, std::size_t> id_index_;
};

Partition partition(const Dataset& dataset, const SubgroupSlice& slice);

// Column names used when reading and writing comment CSVs. Identity columns
// default to the identity name itself.
struct ColumnMap {
  std::string id = "id";
  std::string text = "comment_text";
  std::string toxicity = "target";
  std::map<std::string, std::string> identity_columns;

  const std::string& column_for(const std::string& identity) const;
};

Dataset read_dataset(std::istream& in, const ColumnMap& columns,
                     const std::vector<std::string>& identities,
                     std::string_view source_name = "<stream>");

// Throws IoError when the file cannot be opened.
Dataset load_dataset(const std::filesystem::path& path, const ColumnMap& columns = {},
                     const std::vector<std::string>& identities = default_identities());

void write_dataset(std::ostream& out, const Dataset& dataset, const ColumnMap& columns = {});

// Reads a single-column CSV with an `id` header.
std::vector<std::string> read_id_list(const std::filesystem::path& path);
void write_id_list(std::ostream& out, const Dataset& dataset);

}  // namespace toxaudit

#endif  // TOXAUDIT_DATASET_H_
