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

#include "toxaudit/csv.h"

#include <charconv>
#include <cmath>

#include "toxaudit/errors.h"

namespace toxaudit::csv {

std::optional<Row> Reader::next() {
  int c = in_.get();
  if (c == std::char_traits<char>::eof()) return std::nullopt;
  record_line_ = line_;

  Row row;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  while (true) {
    if (c == std::char_traits<char>::eof()) {
      if (in_quotes) {
        throw ValidationError("malformed CSV: unterminated quoted field starting on line " +
                              std::to_string(record_line_));
      }
      row.push_back(std::move(field));
      return row;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line_;
        field.push_back(ch);
      }
    } else if (ch == '"') {
      if (!field.empty() || field_was_quoted) {
        throw ValidationError("malformed CSV: unexpected quote on line " +
                              std::to_string(line_));
      }
      in_quotes = true;
      field_was_quoted = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      field_was_quoted = false;
    } else if (ch == '\r' && in_.peek() == '\n') {
      // CRLF; the '\n' ends the record on the next iteration.
    } else if (ch == '\n') {
      ++line_;
      row.push_back(std::move(field));
      return row;
    } else {
      if (field_was_quoted) {
        throw ValidationError("malformed CSV: text after closing quote on line " +
                              std::to_string(line_));
      }
      field.push_back(ch);
    }
    c = in_.get();
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

std::optional<double> parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace toxaudit::csv
