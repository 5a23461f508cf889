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

#ifndef TOXAUDIT_CSV_H_
#define TOXAUDIT_CSV_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace toxaudit::csv {

using Row = std::vector<std::string>;

// Streaming RFC 4180 reader. Quoted fields may contain commas, doubled
// quotes and line breaks. Both LF and CRLF line endings are accepted.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  // Returns the next record, or nullopt at end of input. Throws
  // ValidationError on an unterminated quoted field or stray quote.
  std::optional<Row> next();

  // 1-based physical line on which the last returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

// Quotes `field` only when it contains a delimiter, quote or line break.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// Strict full-string parse; nullopt on trailing garbage or empty input.
std::optional<double> parse_double(std::string_view text);

}  // namespace toxaudit::csv

#endif  // TOXAUDIT_CSV_H_
