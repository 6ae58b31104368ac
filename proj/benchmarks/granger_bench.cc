/*
 * Copyright 2026 The nftsignal Authors.
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

#include <benchmark/benchmark.h>

#include "nftsignal/granger.h"
#include "nftsignal/synth.h"

namespace nftsignal {
namespace {

void BM_SsrFTest(benchmark::State& state) {
  const auto pair = GenVarPair({0.5, 1, static_cast<int>(state.range(0)), 0.5, 1});
  const int lags = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(SsrFTest(pair.y, pair.x, lags));
  }
}
BENCHMARK(BM_SsrFTest)->ArgsProduct({{120, 1000, 10000}, {1, 3}});

void BM_RunBidirectional(benchmark::State& state) {
  const auto pair = GenVarPair({0.5, 1, 200, 0.5, 2});
  const std::vector<LagSpec> lags = {{1}, {2}, {3}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunBidirectional(pair.x, pair.y, lags));
  }
}
BENCHMARK(BM_RunBidirectional);

}  // namespace
}  // namespace nftsignal
