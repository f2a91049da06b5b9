// Copyright 2026 The GeoQA Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <benchmark/benchmark.h>

#include <memory>

#include "geoqa/config.h"
#include "geoqa/eval.h"
#include "geoqa/formulation.h"

namespace {

using namespace geoqa;

const config::Resources& res() {
  static const auto r = config::loadResources(config::loadConfig(GEOQA_BENCH_DATA_DIR "/geoqa.conf"));
  return *r;
}

void BM_LoadResources(benchmark::State& state) {
  const auto cfg = config::loadConfig(GEOQA_BENCH_DATA_DIR "/geoqa.conf");
  for (auto _ : state) benchmark::DoNotOptimize(config::loadResources(cfg));
}
BENCHMARK(BM_LoadResources)->Unit(benchmark::kMillisecond);

void BM_MatchByPredicate(benchmark::State& state) {
  const auto& kb = *res().kb;
  const auto p = kb::instanceIri("konumlanir");
  for (auto _ : state) benchmark::DoNotOptimize(kb.match(std::nullopt, p, std::nullopt));
}
BENCHMARK(BM_MatchByPredicate);

void BM_Closure(benchmark::State& state) {
  for (auto _ : state) {
    state.PauseTiming();
    kb::KnowledgeBase k(res().kb->schema());
    kb::InstanceData d = kb::loadInstances(config::readFile(res().config.instancePaths.front()), k.schema());
    k.addInstances(d);
    state.ResumeTiming();
    benchmark::DoNotOptimize(k.applyClosure());
  }
}
BENCHMARK(BM_Closure)->Unit(benchmark::kMicrosecond);

void BM_EvaluateNested(benchmark::State& state) {
  auto a = formulation::answer("Türkiye'nin en derin denizi hangisidir ?", res().pipeline(), {nullptr, false, {}});
  for (auto _ : state) benchmark::DoNotOptimize(sparql::evaluate(a.query, *res().kb));
}
BENCHMARK(BM_EvaluateNested)->Unit(benchmark::kMicrosecond);

void BM_Annotate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        nlp::annotate("Ege Bölgesi'ndeki şehirlerin nüfuslarını gösterir misin ?", *res().lexicon, *res().kb));
  }
}
BENCHMARK(BM_Annotate)->Unit(benchmark::kMicrosecond);

void BM_Answer(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        formulation::answer("Ankara iline komşu olan illeri gösterir misin ?", res().pipeline()));
  }
}
BENCHMARK(BM_Answer)->Unit(benchmark::kMicrosecond);

void BM_SuiteMethod1(benchmark::State& state) {
  const auto suite = eval::loadSuiteFile(GEOQA_BENCH_DATA_DIR "/suite.jsonl");
  eval::RunOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval::runMethod1(suite, res().pipeline(), opt));
}
BENCHMARK(BM_SuiteMethod1)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
