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

#include "toxaudit/dataset.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "toxaudit/csv.h"
#include "toxaudit/errors.h"

namespace toxaudit {
namespace {

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && cp < 0x10000) || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace

std::vector<std::string> default_identities() {
  return {kDefaultIdentities.begin(), kDefaultIdentities.end()};
}

BinaryLabel binarize(const CommentRecord& record, double label_threshold) {
  return record.toxicity >= label_threshold ? BinaryLabel::kToxic : BinaryLabel::kNonToxic;
}

double identity_targeted(const CommentRecord& record) {
  double best = 0.0;
  for (double v : record.identities) best = std::max(best, v);
  return best;
}

Dataset::Dataset(std::vector<std::string> identities, std::vector<CommentRecord> records)
    : identities_(std::move(identities)), records_(std::move(records)) {
  std::set<std::string_view> seen_identities;
  for (const auto& name : identities_) {
    if (!seen_identities.insert(name).second) {
      throw ValidationError("duplicate identity name '" + name + "'");
    }
  }
  id_index_.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const CommentRecord& r = records_[i];
    if (r.id.empty()) throw ValidationError("record " + std::to_string(i) + " has an empty id");
    if (!in_unit_interval(r.toxicity)) {
      throw ValidationError("record '" + r.id + "': toxicity outside [0,1]");
    }
    if (r.identities.size() != identities_.size()) {
      throw ValidationError("record '" + r.id + "': expected " +
                            std::to_string(identities_.size()) + " identity values, got " +
                            std::to_string(r.identities.size()));
    }
    for (std::size_t k = 0; k < r.identities.size(); ++k) {
      if (!in_unit_interval(r.identities[k])) {
        throw ValidationError("record '" + r.id + "': identity '" + identities_[k] +
                              "' outside [0,1]");
      }
    }
    if (!id_index_.emplace(r.id, i).second) {
      throw ValidationError("duplicate id '" + r.id + "'");
    }
  }
}

std::size_t Dataset::identity_index(std::string_view identity) const {
  auto it = std::find(identities_.begin(), identities_.end(), identity);
  if (it == identities_.end()) {
    throw ValidationError("unknown identity '" + std::string(identity) + "'");
  }
  return static_cast<std::size_t>(it - identities_.begin());
}

bool Dataset::contains_id(std::string_view id) const {
  return id_index_.find(std::string(id)) != id_index_.end();
}

Dataset Dataset::select(std::span<const std::size_t> indices) const {
  std::vector<CommentRecord> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(records_.at(i));
  return Dataset(identities_, std::move(out));
}

bool Dataset::operator==(const Dataset& other) const {
  if (identities_ != other.identities_ || records_.size() != other.records_.size()) return false;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& a = records_[i];
    const auto& b = other.records_[i];
    if (a.id != b.id || a.text != b.text || a.toxicity != b.toxicity ||
        a.identities != b.identities) {
      return false;
    }
  }
  return true;
}

Partition partition(const Dataset& dataset, const SubgroupSlice& slice) {
  const std::size_t k = dataset.identity_index(slice.identity);
  Partition out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset[i].identities[k] >= slice.membership_threshold) {
      out.subgroup.push_back(i);
    } else {
      out.background.push_back(i);
    }
  }
  return out;
}

const std::string& ColumnMap::column_for(const std::string& identity) const {
  auto it = identity_columns.find(identity);
  return it == identity_columns.end() ? identity : it->second;
}

Dataset read_dataset(std::istream& in, const ColumnMap& columns,
                     const std::vector<std::string>& identities, std::string_view source_name) {
  csv::Reader reader(in);
  const std::string where = std::string(source_name);
  auto header = reader.next();
  if (!header) throw ValidationError(where + ": missing header row");
  if (!header->empty() && header->front().starts_with("\xEF\xBB\xBF")) {
    header->front().erase(0, 3);
  }

  auto find_column = [&](const std::string& name) -> std::size_t {
    auto it = std::find(header->begin(), header->end(), name);
    if (it == header->end()) throw ValidationError(where + ": missing column '" + name + "'");
    return static_cast<std::size_t>(it - header->begin());
  };
  const std::size_t id_col = find_column(columns.id);
  const std::size_t text_col = find_column(columns.text);
  const std::size_t tox_col = find_column(columns.toxicity);
  std::vector<std::size_t> identity_cols;
  identity_cols.reserve(identities.size());
  for (const auto& name : identities) identity_cols.push_back(find_column(columns.column_for(name)));

  auto parse_unit = [&](const std::string& cell, std::size_t line, const std::string& column,
                        bool empty_is_zero) -> double {
    if (empty_is_zero && cell.find_first_not_of(" \t\r") == std::string::npos) return 0.0;
    auto value = csv::parse_double(cell);
    if (!value) {
      throw ValidationError(where + ": row " + std::to_string(line) + ", column '" + column +
                            "': not a number: '" + cell + "'");
    }
    if (!in_unit_interval(*value)) {
      throw ValidationError(where + ": row " + std::to_string(line) + ", column '" + column +
                            "': value " + cell + " outside [0,1]");
    }
    return *value;
  };

  std::vector<CommentRecord> records;
  std::unordered_map<std::string, std::size_t> first_seen;
  while (auto row = reader.next()) {
    const std::size_t line = reader.record_line();
    if (row->size() == 1 && row->front().empty()) continue;  // blank line
    if (row->size() != header->size()) {
      throw ValidationError(where + ": malformed row " + std::to_string(line) + ": expected " +
                            std::to_string(header->size()) + " fields, got " +
                            std::to_string(row->size()));
    }
    CommentRecord r;
    r.id = (*row)[id_col];
    if (r.id.empty()) throw ValidationError(where + ": row " + std::to_string(line) + ": empty id");
    if (auto [it, inserted] = first_seen.emplace(r.id, line); !inserted) {
      throw ValidationError(where + ": row " + std::to_string(line) + ": duplicate id '" + r.id +
                            "' (first seen on row " + std::to_string(it->second) + ")");
    }
    r.text = std::move((*row)[text_col]);
    if (!valid_utf8(r.text)) {
      throw ValidationError(where + ": row " + std::to_string(line) + ": text is not valid UTF-8");
    }
    r.toxicity = parse_unit((*row)[tox_col], line, columns.toxicity, false);
    r.identities.reserve(identities.size());
    for (std::size_t k = 0; k < identities.size(); ++k) {
      r.identities.push_back(
          parse_unit((*row)[identity_cols[k]], line, columns.column_for(identities[k]), true));
    }
    records.push_back(std::move(r));
  }
  return Dataset(identities, std::move(records));
}

Dataset load_dataset(const std::filesystem::path& path, const ColumnMap& columns,
                     const std::vector<std::string>& identities) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open dataset '" + path.string() + "'");
  return read_dataset(in, columns, identities, path.string());
}

void write_dataset(std::ostream& out, const Dataset& dataset, const ColumnMap& columns) {
  std::vector<std::string> header = {columns.id, columns.text, columns.toxicity};
  for (const auto& name : dataset.identities()) header.push_back(columns.column_for(name));
  csv::write_row(out, header);
  std::vector<std::string> fields;
  for (const auto& r : dataset.records()) {
    fields.clear();
    fields.push_back(r.id);
    fields.push_back(r.text);
    fields.push_back(csv::format_double(r.toxicity));
    for (double v : r.identities) fields.push_back(csv::format_double(v));
    csv::write_row(out, fields);
  }
}

std::vector<std::string> read_id_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open id list '" + path.string() + "'");
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || header->empty() || header->front() != "id") {
    throw ValidationError(path.string() + ": expected header 'id'");
  }
  std::vector<std::string> ids;
  while (auto row = reader.next()) {
    if (row->size() == 1 && row->front().empty()) continue;
    ids.push_back(row->front());
  }
  return ids;
}

void write_id_list(std::ostream& out, const Dataset& dataset) {
  out << "id\n";
  for (const auto& r : dataset.records()) out << csv::escape(r.id) << '\n';
}

}  // namespace toxaudit
