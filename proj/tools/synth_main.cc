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

// Writes a synthetic planted-bias corpus as CSV, for demos and smoke tests.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "toxaudit/dataset.h"
#include "toxaudit/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic comment corpus with a planted identity bias"};
  toxaudit::synthetic::CorpusConfig config;
  std::string out_path;
  app.add_option("--out", out_path, "Output CSV path")->required();
  app.add_option("--records", config.n_records, "Number of records")->capture_default_str();
  app.add_option("--id-prefix", config.id_prefix, "Prefix for record ids")->capture_default_str();
  app.add_option("--planted-identity", config.planted_identity,
                 "Identity whose toxic comments use a dedicated vocabulary")
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Generator seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto dataset = toxaudit::synthetic::make_corpus(config);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 2;
    }
    toxaudit::write_dataset(out, dataset);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
