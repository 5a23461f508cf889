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

// Serial vs OpenMP kernels on a synthetic corpus. Thread count follows
// OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "toxaudit/dataset.h"
#include "toxaudit/kernels.h"
#include "toxaudit/logreg.h"
#include "toxaudit/synthetic.h"
#include "toxaudit/tfidf.h"

namespace toxaudit {
namespace {

struct Fixture {
  Dataset corpus;
  Vocabulary vocab;
  std::vector<SparseVector> vectors;
  LogRegModel model;
  std::vector<double> scores;
  std::vector<std::uint8_t> toxic;
  std::vector<std::vector<std::uint8_t>> members;
};

const Fixture& fixture(std::size_t n) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Fixture f;
  synthetic::CorpusConfig config;
  config.n_records = n;
  f.corpus = synthetic::make_corpus(config);
  std::vector<std::string> texts;
  for (const auto& r : f.corpus.records()) texts.push_back(r.text);
  f.vocab = fit_vocabulary(texts);
  f.vectors = kernels::serial::vectorize_corpus(texts, f.vocab);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 1.0);
  f.model.weights.resize(f.vocab.size());
  for (auto& w : f.model.weights) w = normal(rng);
  for (const auto& r : f.corpus.records()) {
    f.scores.push_back(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    f.toxic.push_back(is_toxic(r) ? 1 : 0);
  }
  for (std::size_t k = 0; k < f.corpus.identities().size(); ++k) {
    std::vector<std::uint8_t> mask;
    for (const auto& r : f.corpus.records()) mask.push_back(r.identities[k] >= 0.5 ? 1 : 0);
    f.members.push_back(std::move(mask));
  }
  return cache.emplace(n, std::move(f)).first->second;
}

template <bool kParallel>
void BM_VectorizeCorpus(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = kParallel ? kernels::parallel::vectorize_corpus(f.corpus.records(), f.vocab)
                         : kernels::serial::vectorize_corpus(f.corpus.records(), f.vocab);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool kParallel>
void BM_DecisionValues(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  std::vector<std::size_t> rows(f.vectors.size());
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<double> out(rows.size());
  for (auto _ : state) {
    if (kParallel) {
      kernels::parallel::decision_values(f.model, f.vectors, rows, out);
    } else {
      kernels::serial::decision_values(f.model, f.vectors, rows, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool kParallel>
void BM_EvaluateSlices(benchmark::State& state) {
  const Fixture& f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto rows = kParallel ? kernels::parallel::evaluate_slices(f.scores, f.toxic, f.members)
                          : kernels::serial::evaluate_slices(f.scores, f.toxic, f.members);
    benchmark::DoNotOptimize(rows.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_VectorizeCorpus<false>)->Name("vectorize_corpus/serial")->Arg(5000)->Arg(50000);
BENCHMARK(BM_VectorizeCorpus<true>)->Name("vectorize_corpus/parallel")->Arg(5000)->Arg(50000);
BENCHMARK(BM_DecisionValues<false>)->Name("decision_values/serial")->Arg(5000)->Arg(50000);
BENCHMARK(BM_DecisionValues<true>)->Name("decision_values/parallel")->Arg(5000)->Arg(50000);
BENCHMARK(BM_EvaluateSlices<false>)->Name("evaluate_slices/serial")->Arg(5000)->Arg(50000);
BENCHMARK(BM_EvaluateSlices<true>)->Name("evaluate_slices/parallel")->Arg(5000)->Arg(50000);

}  // namespace
}  // namespace toxaudit

BENCHMARK_MAIN();
