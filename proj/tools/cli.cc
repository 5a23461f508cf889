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

#include "cli.h"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "toxaudit/baseline_model.h"
#include "toxaudit/dataset.h"
#include "toxaudit/digest.h"
#include "toxaudit/errors.h"
#include "toxaudit/experiment.h"
#include "toxaudit/metrics.h"
#include "toxaudit/predictions.h"
#include "toxaudit/report.h"

namespace toxaudit::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kToolVersion = "1.0.0";

struct DataOptions {
  std::string id_column = "id";
  std::string text_column = "comment_text";
  std::string target_column = "target";
  std::vector<std::string> identity_columns;  // name=column
  std::vector<std::string> identities = default_identities();

  ColumnMap column_map() const {
    ColumnMap map;
    map.id = id_column;
    map.text = text_column;
    map.toxicity = target_column;
    for (const auto& spec : identity_columns) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
        throw ValidationError("--identity-column expects name=column, got '" + spec + "'");
      }
      map.identity_columns[spec.substr(0, eq)] = spec.substr(eq + 1);
    }
    return map;
  }

  // An empty --identities value audits no identities.
  std::vector<std::string> identity_list() const {
    std::vector<std::string> out;
    for (const auto& name : identities) {
      if (!name.empty()) out.push_back(name);
    }
    return out;
  }

  json to_json() const {
    return {{"id_column", id_column},
            {"text_column", text_column},
            {"target_column", target_column},
            {"identity_columns", identity_columns},
            {"identities", identity_list()}};
  }
};

struct Thresholds {
  double label = kDefaultLabelThreshold;
  double membership = kDefaultMembershipThreshold;
  double filter = kDefaultIdentityFilterThreshold;

  void validate() const {
    if (!(label > 0.0 && label < 1.0)) throw ValidationError("--label-threshold must be in (0,1)");
    if (!(membership > 0.0 && membership <= 1.0)) {
      throw ValidationError("--membership-threshold must be in (0,1]");
    }
    if (!(filter > 0.0 && filter < 1.0)) throw ValidationError("--filter-threshold must be in (0,1)");
  }

  json to_json() const {
    return {{"label", label}, {"membership", membership}, {"identity_filter", filter}};
  }
};

struct ModelOptions {
  ModelConfig config;

  json to_json() const {
    const TrainConfig& t = config.train;
    return {{"learning_rate", t.learning_rate}, {"batch_size", t.batch_size},
            {"max_epochs", t.max_epochs},       {"l2_lambda", t.l2_lambda},
            {"tol", t.tol},                     {"seed", t.seed},
            {"max_features", config.max_features}};
  }
};

json split_json(const SplitSpec& spec) {
  return {{"mode", std::string(to_string(spec.mode))},
          {"size", spec.size},
          {"identity_filter_threshold", spec.identity_filter_threshold},
          {"seed", spec.seed},
          {"label_threshold", spec.label_threshold}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

json input_entry(const std::string& path) {
  return {{"path", path}, {"sha256", sha256_file(path)}};
}

json base_metadata(const std::string& command) {
  return {{"tool", "toxaudit"},
          {"version", kToolVersion},
          {"command", command},
          {"created_at", utc_timestamp()}};
}

void add_data_options(CLI::App* cmd, DataOptions& data) {
  cmd->add_option("--id-column", data.id_column, "Column holding record ids")
      ->capture_default_str();
  cmd->add_option("--text-column", data.text_column, "Column holding comment text")
      ->capture_default_str();
  cmd->add_option("--target-column", data.target_column, "Column holding toxicity in [0,1]")
      ->capture_default_str();
  cmd->add_option("--identity-column", data.identity_columns,
                  "Remap an identity to a CSV column, as name=column (repeatable)");
  cmd->add_option("--identities", data.identities, "Comma-separated identities to audit")
      ->delimiter(',')
      ->capture_default_str();
}

void add_model_options(CLI::App* cmd, ModelOptions& model) {
  TrainConfig& t = model.config.train;
  cmd->add_option("--learning-rate", t.learning_rate, "Gradient step size")->capture_default_str();
  cmd->add_option("--batch-size", t.batch_size, "Mini-batch size")->capture_default_str();
  cmd->add_option("--epochs", t.max_epochs, "Maximum training epochs")->capture_default_str();
  cmd->add_option("--l2", t.l2_lambda, "L2 regularization strength")->capture_default_str();
  cmd->add_option("--tol", t.tol, "Stop when an epoch improves the loss by less than this")
      ->capture_default_str();
  cmd->add_option("--max-features", model.config.max_features, "Vocabulary size cap")
      ->capture_default_str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
}

Dataset restrict_to_ids(const Dataset& dataset, const std::vector<std::string>& ids) {
  std::unordered_set<std::string> wanted(ids.begin(), ids.end());
  if (wanted.size() != ids.size()) throw ValidationError("id list contains duplicates");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (wanted.erase(dataset[i].id)) keep.push_back(i);
  }
  if (!wanted.empty()) {
    throw ValidationError("id list names " + std::to_string(wanted.size()) +
                          " ids that are not in the dataset, e.g. '" + *wanted.begin() + "'");
  }
  return dataset.select(keep);
}

std::vector<NamedHistogram> histograms_for(const std::string& name, const Dataset& dataset,
                                           const PredictionSet& predictions,
                                           const Thresholds& thresholds, std::size_t bins) {
  std::vector<NamedHistogram> out;
  for (const auto& slice : default_slices(dataset, thresholds.membership)) {
    out.push_back({name, slice.identity,
                   score_histogram(dataset, predictions, slice, thresholds.label, bins)});
  }
  return out;
}

// ---- audit ----------------------------------------------------------------

struct AuditOptions {
  std::string data;
  std::string predictions;
  std::string out;
  std::string name = "model";
  std::size_t bins = 10;
  Thresholds thresholds;
  DataOptions data_options;
};

void run_audit(const AuditOptions& o, std::ostream& out) {
  o.thresholds.validate();
  const Dataset dataset = load_dataset(o.data, o.data_options.column_map(), o.data_options.identity_list());
  const PredictionSet predictions = import_predictions(o.predictions, dataset);
  const auto slices = default_slices(dataset, o.thresholds.membership);

  ReportBundle bundle;
  bundle.bias_reports.push_back(
      {o.name, bias_report(dataset, predictions, slices, o.thresholds.label)});
  bundle.histograms = histograms_for(o.name, dataset, predictions, o.thresholds, o.bins);
  bundle.metadata = base_metadata("audit");
  bundle.metadata["thresholds"] = o.thresholds.to_json();
  bundle.metadata["data_options"] = o.data_options.to_json();
  bundle.metadata["bins"] = o.bins;
  bundle.metadata["inputs"] = {{"data", input_entry(o.data)},
                               {"predictions", input_entry(o.predictions)}};

  export_csv(bundle, o.out);
  write_markdown(bundle, o.out);
  out << "overall AUC " << format_metric(bundle.bias_reports[0].report.overall) << "; wrote "
      << o.out << "\n";
}

// ---- split ----------------------------------------------------------------

struct SplitOptions {
  std::string data;
  std::string mode;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::string out;
  Thresholds thresholds;
  DataOptions data_options;
};

void run_split(const SplitOptions& o, std::ostream& out) {
  o.thresholds.validate();
  SplitSpec spec;
  spec.mode = parse_split_mode(o.mode);
  spec.size = o.size;
  spec.seed = o.seed;
  spec.identity_filter_threshold = o.thresholds.filter;
  spec.label_threshold = o.thresholds.label;

  const Dataset dataset = load_dataset(o.data, o.data_options.column_map(), o.data_options.identity_list());
  const Dataset split = build_split(dataset, spec);
  const SplitStats stats = split_stats(split, o.thresholds.label, o.thresholds.membership);

  ensure_directory(o.out);
  const std::string mode(to_string(spec.mode));
  std::ostringstream ids;
  write_id_list(ids, split);
  write_text(fs::path(o.out) / ("split_" + mode + "_ids.csv"), ids.str());
  std::ostringstream stats_csv;
  write_stats_csv(stats_csv, stats);
  write_text(fs::path(o.out) / ("stats_" + mode + ".csv"), stats_csv.str());

  json meta = base_metadata("split");
  meta["split_spec"] = split_json(spec);
  meta["thresholds"] = o.thresholds.to_json();
  meta["data_options"] = o.data_options.to_json();
  meta["inputs"] = {{"data", input_entry(o.data)}};
  write_text(fs::path(o.out) / "run_metadata.json", meta.dump(2) + "\n");

  const NamedSplitStats named[] = {{mode, stats}};
  out << render_stats_table(named);
}

// ---- train / predict --------------------------------------------------------

struct TrainOptions {
  std::string data;
  std::string ids;
  std::string out_model;
  std::uint64_t seed = 0;
  double label_threshold = kDefaultLabelThreshold;
  ModelOptions model;
  DataOptions data_options;
};

void run_train(TrainOptions o, std::ostream& out) {
  if (!(o.label_threshold > 0.0 && o.label_threshold < 1.0)) {
    throw ValidationError("--label-threshold must be in (0,1)");
  }
  o.model.config.train.seed = o.seed;
  o.model.config.label_threshold = o.label_threshold;
  Dataset dataset = load_dataset(o.data, o.data_options.column_map(), o.data_options.identity_list());
  if (!o.ids.empty()) dataset = restrict_to_ids(dataset, read_id_list(o.ids));

  const TextClassifier classifier = train_classifier(dataset, o.model.config);
  save_classifier(o.out_model, classifier);
  const MetricValue train_auc =
      overall_auc(dataset, classifier.predict(dataset), o.label_threshold);
  out << "trained on " << dataset.size() << " records, " << classifier.vocabulary.size()
      << " features, " << classifier.epoch_loss.size() << " epochs; training AUC "
      << format_metric(train_auc) << "\n";
}

struct PredictOptions {
  std::string model;
  std::string data;
  std::string out;
  DataOptions data_options;
};

void run_predict(const PredictOptions& o, std::ostream& out) {
  const TextClassifier classifier = load_classifier(o.model);
  const Dataset dataset = load_dataset(o.data, o.data_options.column_map(), o.data_options.identity_list());
  std::ostringstream text;
  write_predictions(text, classifier.predict(dataset));
  write_text(o.out, text.str());
  out << "wrote " << dataset.size() << " predictions to " << o.out << "\n";
}

// ---- compare ----------------------------------------------------------------

struct CompareOptions {
  std::string data_train;
  std::string data_test;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t bins = 10;
  Thresholds thresholds;
  ModelOptions model;
  DataOptions data_options;
};

void run_compare(CompareOptions o, std::ostream& out) {
  o.thresholds.validate();
  o.model.config.train.seed = o.seed;
  o.model.config.label_threshold = o.thresholds.label;

  SplitSpec mixed;
  mixed.mode = SplitMode::kMixed;
  mixed.size = o.size;
  mixed.seed = o.seed;
  mixed.identity_filter_threshold = o.thresholds.filter;
  mixed.label_threshold = o.thresholds.label;
  SplitSpec naive = mixed;
  naive.mode = SplitMode::kNaive;

  const ColumnMap columns = o.data_options.column_map();
  const Dataset train = load_dataset(o.data_train, columns, o.data_options.identity_list());
  const Dataset test = load_dataset(o.data_test, columns, o.data_options.identity_list());
  const ComparisonResult result =
      run_comparison(train, test, mixed, naive, o.model.config, o.thresholds.membership);

  ReportBundle bundle;
  bundle.bias_reports = {{"mixed", result.mixed_report}, {"naive", result.naive_report}};
  bundle.stats = {{"mixed", result.mixed_stats}, {"naive", result.naive_stats}};
  bundle.histograms =
      histograms_for("mixed", test, result.mixed_predictions, o.thresholds, o.bins);
  for (auto& h : histograms_for("naive", test, result.naive_predictions, o.thresholds, o.bins)) {
    bundle.histograms.push_back(std::move(h));
  }
  bundle.metadata = base_metadata("compare");
  bundle.metadata["split_specs"] = {{"mixed", split_json(mixed)}, {"naive", split_json(naive)}};
  bundle.metadata["model"] = o.model.to_json();
  bundle.metadata["thresholds"] = o.thresholds.to_json();
  bundle.metadata["data_options"] = o.data_options.to_json();
  bundle.metadata["bins"] = o.bins;
  bundle.metadata["seed"] = o.seed;
  bundle.metadata["inputs"] = {{"train", input_entry(o.data_train)},
                               {"test", input_entry(o.data_test)}};

  export_csv(bundle, o.out);
  write_markdown(bundle, o.out);
  out << render_bias_table(bundle.bias_reports) << "\n" << render_stats_table(bundle.stats);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"toxaudit: identity-subgroup bias audits for toxicity classifiers"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Optional TOML/INI file supplying defaults; flags win");
  app.set_version_flag("--version", kToolVersion);

  AuditOptions audit;
  auto* audit_cmd = app.add_subcommand("audit", "Audit a prediction file against a labeled dataset");
  audit_cmd->add_option("--data", audit.data, "Labeled comment CSV")->required();
  audit_cmd->add_option("--predictions", audit.predictions, "Prediction CSV (id,score)")->required();
  audit_cmd->add_option("--out", audit.out, "Output directory")->required();
  audit_cmd->add_option("--name", audit.name, "Model name used in output file names")
      ->capture_default_str();
  audit_cmd->add_option("--label-threshold", audit.thresholds.label, "Toxic iff target >= this")
      ->capture_default_str();
  audit_cmd->add_option("--membership-threshold", audit.thresholds.membership,
                        "Subgroup member iff identity value >= this")
      ->capture_default_str();
  audit_cmd->add_option("--bins", audit.bins, "Histogram bins over [0,1]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_data_options(audit_cmd, audit.data_options);

  SplitOptions split;
  auto* split_cmd = app.add_subcommand("split", "Sample a mixed or identity-free (naive) training split");
  split_cmd->add_option("--data", split.data, "Labeled comment CSV")->required();
  split_cmd->add_option("--mode", split.mode, "mixed or naive")
      ->required()
      ->check(CLI::IsMember({"mixed", "naive"}));
  split_cmd->add_option("--size", split.size, "Number of records to sample")
      ->required()
      ->check(CLI::PositiveNumber);
  split_cmd->add_option("--seed", split.seed, "Sampling seed")->required();
  split_cmd->add_option("--out", split.out, "Output directory")->required();
  split_cmd->add_option("--filter-threshold", split.thresholds.filter,
                        "Naive mode keeps records whose max identity value is below this")
      ->capture_default_str();
  split_cmd->add_option("--label-threshold", split.thresholds.label, "Toxic iff target >= this")
      ->capture_default_str();
  split_cmd->add_option("--membership-threshold", split.thresholds.membership,
                        "Subgroup cell iff max identity value >= this")
      ->capture_default_str();
  add_data_options(split_cmd, split.data_options);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Fit the TFIDF + logistic regression baseline");
  train_cmd->add_option("--data", train.data, "Labeled comment CSV")->required();
  train_cmd->add_option("--ids", train.ids, "Optional id-list CSV restricting the training rows");
  train_cmd->add_option("--out-model", train.out_model, "Model output path")->required();
  train_cmd->add_option("--seed", train.seed, "Shuffling seed")->required();
  train_cmd->add_option("--label-threshold", train.label_threshold, "Toxic iff target >= this")
      ->capture_default_str();
  add_model_options(train_cmd, train.model);
  add_data_options(train_cmd, train.data_options);

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Score a dataset with a saved baseline model");
  predict_cmd->add_option("--model", predict.model, "Model file from 'train'")->required();
  predict_cmd->add_option("--data", predict.data, "Comment CSV to score")->required();
  predict_cmd->add_option("--out", predict.out, "Prediction CSV output path")->required();
  add_data_options(predict_cmd, predict.data_options);

  CompareOptions compare;
  auto* compare_cmd =
      app.add_subcommand("compare", "Train mixed and naive baselines and audit both on a test set");
  compare_cmd->add_option("--data-train", compare.data_train, "Training corpus CSV")->required();
  compare_cmd->add_option("--data-test", compare.data_test, "Test corpus CSV")->required();
  compare_cmd->add_option("--size", compare.size, "Records per training split")
      ->required()
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", compare.seed, "Seed for sampling and training")->required();
  compare_cmd->add_option("--out", compare.out, "Output directory")->required();
  compare_cmd->add_option("--bins", compare.bins, "Histogram bins over [0,1]")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--filter-threshold", compare.thresholds.filter,
                          "Naive split keeps records whose max identity value is below this")
      ->capture_default_str();
  compare_cmd->add_option("--label-threshold", compare.thresholds.label, "Toxic iff target >= this")
      ->capture_default_str();
  compare_cmd->add_option("--membership-threshold", compare.thresholds.membership,
                          "Subgroup member iff identity value >= this")
      ->capture_default_str();
  add_model_options(compare_cmd, compare.model);
  add_data_options(compare_cmd, compare.data_options);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  try {
    if (*audit_cmd) run_audit(audit, out);
    if (*split_cmd) run_split(split, out);
    if (*train_cmd) run_train(train, out);
    if (*predict_cmd) run_predict(predict, out);
    if (*compare_cmd) run_compare(compare, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace toxaudit::cli
