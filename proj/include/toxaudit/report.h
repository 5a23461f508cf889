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

#ifndef TOXAUDIT_REPORT_H_
#define TOXAUDIT_REPORT_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "toxaudit/experiment.h"
#include "toxaudit/metrics.h"

namespace toxaudit {

struct NamedBiasReport {
  std::string name;
  BiasReport report;
};

struct NamedSplitStats {
  std::string name;
  SplitStats stats;
};

struct NamedHistogram {
  std::string name;
  std::string identity;
  ScoreHistogram histogram;
};

struct ReportBundle {
  std::vector<NamedBiasReport> bias_reports;
  std::vector<NamedSplitStats> stats;
  std::vector<NamedHistogram> histograms;
  // Run configuration, seeds and input digests; written as run_metadata.json.
  nlohmann::json metadata = nlohmann::json::object();
};

// Names must be unique per kind and usable in file names.
void validate(const ReportBundle& bundle);

// "0.861" style, or "N/A" for an undefined metric.
std::string format_metric(const MetricValue& metric);
// Rounds to the nearest integer: 5.04 -> "5 to 1". "undefined" when empty.
std::string format_ratio(const std::optional<double>& ratio);

// Markdown table with one row per subgroup: identity, then Subgroup/BPSN/BNSP
// AUC for each report, then subgroup size. Rows follow the first report's
// ascending Subgroup AUC. Accepts one or two reports; two reports must cover
// the same identities.
std::string render_bias_table(std::span<const NamedBiasReport> reports);

// Markdown table of training-set composition, one column per split.
std::string render_stats_table(std::span<const NamedSplitStats> stats);

// Full report.md contents.
std::string render_markdown(const ReportBundle& bundle);

void write_bias_csv(std::ostream& out, const BiasReport& report);
BiasReport read_bias_csv(std::istream& in);

void write_stats_csv(std::ostream& out, const SplitStats& stats);
SplitStats read_stats_csv(std::istream& in);

// Columns: bin_lo, bin_hi, toxic_count, non_toxic_count.
void write_histogram_csv(std::ostream& out, const ScoreHistogram& histogram);
ScoreHistogram read_histogram_csv(std::istream& in);

// Writes bias_<name>.csv, stats_<name>.csv, hist_<name>_<identity>.csv and
// run_metadata.json into `directory` (created if needed). Returns the paths
// written, in that order. Throws IoError on write failures.
std::vector<std::filesystem::path> export_csv(const ReportBundle& bundle,
                                              const std::filesystem::path& directory);

// Writes report.md into `directory`.
std::filesystem::path write_markdown(const ReportBundle& bundle,
                                     const std::filesystem::path& directory);

}  // namespace toxaudit

#endif  // TOXAUDIT_REPORT_H_
