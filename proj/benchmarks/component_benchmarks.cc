// Copyright 2026 The bbtp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Per-component cost on random 100-instruction blocks.

#include <random>
#include <vector>

#include "bbtp/backend.h"
#include "bbtp/combiner.h"
#include "bbtp/frontend.h"
#include "bbtp/io.h"
#include "bbtp/precedence.h"
#include "benchmark/benchmark.h"
#include "generators.h"

namespace bbtp {
namespace {

const std::vector<BasicBlock>& Blocks() {
  static const auto* blocks = [] {
    auto* v = new std::vector<BasicBlock>;
    std::mt19937 rng(1);
    for (int i = 0; i < 64; ++i) v->push_back(testing::RandomRealisticBlock(rng, 100));
    return v;
  }();
  return *blocks;
}

const MicroArchConfig& Skl() {
  static const MicroArchConfig cfg =
      LoadArchConfig(std::filesystem::path(BBTP_TEST_DATA_DIR) / "arch" / "SKL.json");
  return cfg;
}

template <typename Fn>
void RunOverBlocks(benchmark::State& state, Fn fn) {
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fn(Blocks()[k++ % Blocks().size()]));
  }
}

void BM_Predec(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return Predec(b, Skl(), Mode::kUnroll); });
}
void BM_Dec(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return Dec(b, Skl()); });
}
void BM_Dsb(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return Dsb(b, Skl()); });
}
void BM_Issue(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return Issue(b, Skl()); });
}
void BM_Ports(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return Ports(b); });
}
void BM_BuildGraph(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return BuildGraph(b); });
}
void BM_Precedence(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return Precedence(b); });
}
void BM_PredictUnroll(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return PredictUnroll(b, Skl()); });
}
void BM_PredictLoop(benchmark::State& s) {
  RunOverBlocks(s, [](const BasicBlock& b) { return PredictLoop(b, Skl()); });
}

BENCHMARK(BM_Predec);
BENCHMARK(BM_Dec);
BENCHMARK(BM_Dsb);
BENCHMARK(BM_Issue);
BENCHMARK(BM_Ports);
BENCHMARK(BM_BuildGraph);
BENCHMARK(BM_Precedence);
BENCHMARK(BM_PredictUnroll);
BENCHMARK(BM_PredictLoop);

}  // namespace
}  // namespace bbtp

BENCHMARK_MAIN();
