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

#include "toxaudit/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "toxaudit/csv.h"
#include "toxaudit/errors.h"

namespace toxaudit {
namespace {

constexpr const char* kOverallRow = "__overall__";
constexpr const char* kUndefinedCell = "NA";

const std::vector<std::string> kBiasHeader = {
    "identity",       "subgroup_size", "subgroup_auc", "subgroup_n_pos",
    "subgroup_n_neg", "bpsn_auc",      "bpsn_n_pos",   "bpsn_n_neg",
    "bnsp_auc",       "bnsp_n_pos",    "bnsp_n_neg"};

bool safe_name(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.';
  });
}

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

void append_metric(std::vector<std::string>& fields, const MetricValue& m) {
  fields.push_back(m.value ? csv::format_double(*m.value) : kUndefinedCell);
  fields.push_back(std::to_string(m.n_pos));
  fields.push_back(std::to_string(m.n_neg));
}

std::size_t parse_size(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) throw ValidationError("bad count '" + text + "'");
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& text) {
  auto v = csv::parse_double(text);
  if (!v) throw ValidationError("bad number '" + text + "'");
  return *v;
}

MetricValue parse_metric(const csv::Row& row, std::size_t offset) {
  MetricValue m;
  if (row[offset] != kUndefinedCell) m.value = parse_real(row[offset]);
  m.n_pos = parse_size(row[offset + 1]);
  m.n_neg = parse_size(row[offset + 2]);
  return m;
}

template <typename Writer>
std::filesystem::path write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  writer(out);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
  return path;
}

std::string table_row(const std::vector<std::string>& cells) {
  std::string line = "|";
  for (const auto& c : cells) line += " " + c + " |";
  return line + "\n";
}

std::string separator_row(std::size_t n) {
  std::string line = "|";
  for (std::size_t i = 0; i < n; ++i) line += " --- |";
  return line + "\n";
}

}  // namespace

void validate(const ReportBundle& bundle) {
  std::set<std::string> names;
  for (const auto& r : bundle.bias_reports) {
    if (!safe_name(r.name)) throw ValidationError("invalid report name '" + r.name + "'");
    if (!names.insert(r.name).second) throw ValidationError("duplicate report name '" + r.name + "'");
  }
  names.clear();
  for (const auto& s : bundle.stats) {
    if (!safe_name(s.name)) throw ValidationError("invalid stats name '" + s.name + "'");
    if (!names.insert(s.name).second) throw ValidationError("duplicate stats name '" + s.name + "'");
  }
  names.clear();
  for (const auto& h : bundle.histograms) {
    const std::string key = h.name + "_" + h.identity;
    if (!safe_name(h.name) || !safe_name(h.identity)) {
      throw ValidationError("invalid histogram name '" + key + "'");
    }
    if (!names.insert(key).second) throw ValidationError("duplicate histogram '" + key + "'");
  }
}

std::string format_metric(const MetricValue& metric) {
  return metric.value ? fixed3(*metric.value) : "N/A";
}

std::string format_ratio(const std::optional<double>& ratio) {
  if (!ratio) return "undefined";
  return std::to_string(static_cast<long long>(std::llround(*ratio))) + " to 1";
}

std::string render_bias_table(std::span<const NamedBiasReport> reports) {
  if (reports.empty() || reports.size() > 2) {
    throw ValidationError("bias table takes one or two reports");
  }
  std::vector<BiasRow> order = reports[0].report.rows;
  sort_rows(order);

  std::vector<std::map<std::string, const BiasRow*>> lookup(reports.size());
  for (std::size_t r = 0; r < reports.size(); ++r) {
    for (const auto& row : reports[r].report.rows) lookup[r][row.identity] = &row;
  }
  if (reports.size() == 2) {
    std::set<std::string> a, b;
    for (const auto& [k, v] : lookup[0]) a.insert(k);
    for (const auto& [k, v] : lookup[1]) b.insert(k);
    if (a != b || reports[0].report.rows.size() != reports[1].report.rows.size()) {
      throw ValidationError("reports '" + reports[0].name + "' and '" + reports[1].name +
                            "' cover different subgroups");
    }
  }

  std::vector<std::string> header = {"Subgroup"};
  for (const auto& r : reports) {
    const std::string prefix = reports.size() == 2 ? r.name + " " : "";
    header.push_back(prefix + "Subgroup AUC");
    header.push_back(prefix + "BPSN AUC");
    header.push_back(prefix + "BNSP AUC");
  }
  header.push_back("Subgroup Size");

  std::string out = table_row(header) + separator_row(header.size());
  for (const auto& row : order) {
    std::vector<std::string> cells = {row.identity};
    for (std::size_t r = 0; r < reports.size(); ++r) {
      const BiasRow& match = *lookup[r].at(row.identity);
      cells.push_back(format_metric(match.subgroup_auc));
      cells.push_back(format_metric(match.bpsn_auc));
      cells.push_back(format_metric(match.bnsp_auc));
    }
    cells.push_back(std::to_string(row.subgroup_size));
    out += table_row(cells);
  }
  return out;
}

std::string render_stats_table(std::span<const NamedSplitStats> stats) {
  if (stats.empty()) throw ValidationError("stats table needs at least one column");
  auto count_cell = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string("N/A");
  };
  std::vector<std::string> header = {""};
  for (const auto& s : stats) header.push_back(s.name);

  std::vector<std::vector<std::string>> rows = {
      {"Total Number of Comments"},        {"Non-Subgroup Toxic Comments"},
      {"Non-Subgroup Not Toxic Comments"}, {"Subgroup Toxic Comments"},
      {"Subgroup Not Toxic Comments"},     {"Not Toxic/Toxic Comments Ratio"}};
  for (const auto& named : stats) {
    const SplitStats& s = named.stats;
    rows[0].push_back(std::to_string(s.total));
    rows[1].push_back(std::to_string(s.non_subgroup_toxic));
    rows[2].push_back(std::to_string(s.non_subgroup_non_toxic));
    rows[3].push_back(count_cell(s.subgroup_toxic));
    rows[4].push_back(count_cell(s.subgroup_non_toxic));
    rows[5].push_back(format_ratio(s.nontoxic_to_toxic_ratio));
  }
  std::string out = table_row(header) + separator_row(header.size());
  for (const auto& row : rows) out += table_row(row);
  return out;
}

std::string render_markdown(const ReportBundle& bundle) {
  validate(bundle);
  std::string out = "# Bias audit report\n\n";
  if (!bundle.bias_reports.empty()) {
    out += "## Overall AUC\n\n";
    out += table_row({"Model", "Overall AUC", "Positives", "Negatives"}) + separator_row(4);
    for (const auto& r : bundle.bias_reports) {
      out += table_row({r.name, format_metric(r.report.overall),
                        std::to_string(r.report.overall.n_pos),
                        std::to_string(r.report.overall.n_neg)});
    }
    out += "\n## Subgroup, BPSN and BNSP AUC\n\n";
    // Reports are shown side by side in pairs.
    for (std::size_t i = 0; i < bundle.bias_reports.size(); i += 2) {
      const std::size_t n = std::min<std::size_t>(2, bundle.bias_reports.size() - i);
      out += render_bias_table(std::span(bundle.bias_reports).subspan(i, n)) + "\n";
    }
  }
  if (!bundle.stats.empty()) {
    out += "## Training data distribution\n\n" + render_stats_table(bundle.stats) + "\n";
  }
  if (!bundle.histograms.empty()) {
    out += "## Score histograms\n\n";
    for (const auto& h : bundle.histograms) {
      out += "- `hist_" + h.name + "_" + h.identity + ".csv`\n";
    }
    out += "\n";
  }
  return out;
}

void write_bias_csv(std::ostream& out, const BiasReport& report) {
  csv::write_row(out, kBiasHeader);
  std::vector<std::string> fields = {kOverallRow,
                                     std::to_string(report.overall.n_pos + report.overall.n_neg)};
  append_metric(fields, report.overall);
  for (int i = 0; i < 6; ++i) fields.emplace_back();
  csv::write_row(out, fields);
  for (const auto& row : report.rows) {
    fields = {row.identity, std::to_string(row.subgroup_size)};
    append_metric(fields, row.subgroup_auc);
    append_metric(fields, row.bpsn_auc);
    append_metric(fields, row.bnsp_auc);
    csv::write_row(out, fields);
  }
}

BiasReport read_bias_csv(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || *header != kBiasHeader) throw ValidationError("bias CSV: unexpected header");
  auto first = reader.next();
  if (!first || first->size() != kBiasHeader.size() || (*first)[0] != kOverallRow) {
    throw ValidationError("bias CSV: first row must be the overall metric");
  }
  BiasReport report;
  report.overall = parse_metric(*first, 2);
  while (auto row = reader.next()) {
    if (row->size() != kBiasHeader.size()) {
      throw ValidationError("bias CSV: malformed row " + std::to_string(reader.record_line()));
    }
    BiasRow r;
    r.identity = (*row)[0];
    r.subgroup_size = parse_size((*row)[1]);
    r.subgroup_auc = parse_metric(*row, 2);
    r.bpsn_auc = parse_metric(*row, 5);
    r.bnsp_auc = parse_metric(*row, 8);
    report.rows.push_back(std::move(r));
  }
  return report;
}

void write_stats_csv(std::ostream& out, const SplitStats& stats) {
  auto opt = [](const auto& v) {
    if constexpr (std::is_same_v<std::decay_t<decltype(v)>, std::optional<double>>) {
      return v ? csv::format_double(*v) : std::string(kUndefinedCell);
    } else {
      return v ? std::to_string(*v) : std::string(kUndefinedCell);
    }
  };
  out << "field,value\n";
  out << "total," << stats.total << '\n';
  out << "non_subgroup_toxic," << stats.non_subgroup_toxic << '\n';
  out << "non_subgroup_non_toxic," << stats.non_subgroup_non_toxic << '\n';
  out << "subgroup_toxic," << opt(stats.subgroup_toxic) << '\n';
  out << "subgroup_non_toxic," << opt(stats.subgroup_non_toxic) << '\n';
  out << "nontoxic_to_toxic_ratio," << opt(stats.nontoxic_to_toxic_ratio) << '\n';
}

SplitStats read_stats_csv(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || *header != std::vector<std::string>{"field", "value"}) {
    throw ValidationError("stats CSV: unexpected header");
  }
  std::map<std::string, std::string> values;
  while (auto row = reader.next()) {
    if (row->size() != 2) throw ValidationError("stats CSV: malformed row");
    values[(*row)[0]] = (*row)[1];
  }
  auto get = [&](const std::string& key) -> const std::string& {
    auto it = values.find(key);
    if (it == values.end()) throw ValidationError("stats CSV: missing field '" + key + "'");
    return it->second;
  };
  SplitStats s;
  s.total = parse_size(get("total"));
  s.non_subgroup_toxic = parse_size(get("non_subgroup_toxic"));
  s.non_subgroup_non_toxic = parse_size(get("non_subgroup_non_toxic"));
  if (get("subgroup_toxic") != kUndefinedCell) s.subgroup_toxic = parse_size(get("subgroup_toxic"));
  if (get("subgroup_non_toxic") != kUndefinedCell) {
    s.subgroup_non_toxic = parse_size(get("subgroup_non_toxic"));
  }
  if (get("nontoxic_to_toxic_ratio") != kUndefinedCell) {
    s.nontoxic_to_toxic_ratio = parse_real(get("nontoxic_to_toxic_ratio"));
  }
  return s;
}

void write_histogram_csv(std::ostream& out, const ScoreHistogram& histogram) {
  out << "bin_lo,bin_hi,toxic_count,non_toxic_count\n";
  for (std::size_t i = 0; i < histogram.n_bins(); ++i) {
    out << csv::format_double(histogram.bin_lo(i)) << ',' << csv::format_double(histogram.bin_hi(i))
        << ',' << histogram.toxic[i] << ',' << histogram.non_toxic[i] << '\n';
  }
}

ScoreHistogram read_histogram_csv(std::istream& in) {
  csv::Reader reader(in);
  auto header = reader.next();
  const std::vector<std::string> expected = {"bin_lo", "bin_hi", "toxic_count", "non_toxic_count"};
  if (!header || *header != expected) throw ValidationError("histogram CSV: unexpected header");
  ScoreHistogram h;
  while (auto row = reader.next()) {
    if (row->size() != 4) throw ValidationError("histogram CSV: malformed row");
    h.toxic.push_back(parse_size((*row)[2]));
    h.non_toxic.push_back(parse_size((*row)[3]));
  }
  return h;
}

std::vector<std::filesystem::path> export_csv(const ReportBundle& bundle,
                                              const std::filesystem::path& directory) {
  validate(bundle);
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create '" + directory.string() + "': " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& r : bundle.bias_reports) {
    written.push_back(write_file(directory / ("bias_" + r.name + ".csv"),
                                 [&](std::ostream& o) { write_bias_csv(o, r.report); }));
  }
  for (const auto& s : bundle.stats) {
    written.push_back(write_file(directory / ("stats_" + s.name + ".csv"),
                                 [&](std::ostream& o) { write_stats_csv(o, s.stats); }));
  }
  for (const auto& h : bundle.histograms) {
    written.push_back(write_file(directory / ("hist_" + h.name + "_" + h.identity + ".csv"),
                                 [&](std::ostream& o) { write_histogram_csv(o, h.histogram); }));
  }
  written.push_back(write_file(directory / "run_metadata.json",
                               [&](std::ostream& o) { o << bundle.metadata.dump(2) << '\n'; }));
  return written;
}

std::filesystem::path write_markdown(const ReportBundle& bundle,
                                     const std::filesystem::path& directory) {
  const std::string text = render_markdown(bundle);
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw IoError("cannot create '" + directory.string() + "': " + ec.message());
  return write_file(directory / "report.md", [&](std::ostream& o) { o << text; });
}

}  // namespace toxaudit
