// Copyright 2026 The qmul Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference sweep vs the OpenMP sweep on the same subjects.

#include "qmul/oracle.hpp"
#include "qmul/verify.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace qmul;

Subject subject_for(std::int64_t which) {
    switch (which) {
        case 0: return make_subject(MultiplierKind::SchoolbookAddSub, 6);
        case 1: return make_subject(MultiplierKind::Mod2nClassic, 7);
        default: return make_subject(MultiplierKind::ModPAddSub, 7, ModPParams{127, 7, 2});
    }
}

void BM_ExhaustiveSerial(benchmark::State &state) {
    const Subject s = subject_for(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_exhaustive_serial(s));
    }
    state.SetLabel(s.kind);
}

void BM_ExhaustiveParallel(benchmark::State &state) {
    const Subject s = subject_for(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_exhaustive(s, SweepOptions{static_cast<int>(state.range(1))}));
    }
    state.SetLabel(s.kind);
}

void BM_RandomizedSerial(benchmark::State &state) {
    const Subject s = make_subject(MultiplierKind::ModPClassic, 32,
                                   ModPParams{oracle::largest_prime_in_width(32), 32, 4});
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_randomized_serial(s, 200, 1));
    }
}

void BM_RandomizedParallel(benchmark::State &state) {
    const Subject s = make_subject(MultiplierKind::ModPClassic, 32,
                                   ModPParams{oracle::largest_prime_in_width(32), 32, 4});
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_randomized(s, 200, 1, SweepOptions{static_cast<int>(state.range(0))}));
    }
}

BENCHMARK(BM_ExhaustiveSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
// jobs = 0 means all available threads.
BENCHMARK(BM_ExhaustiveParallel)->ArgsProduct({{0, 1, 2}, {0, 2, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomizedSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RandomizedParallel)->Arg(0)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
