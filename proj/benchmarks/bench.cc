// Copyright 2026 The qnlb Authors
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

#include <benchmark/benchmark.h>

#include "qnlb/certificates.h"
#include "qnlb/linalg.h"
#include "qnlb/protocols.h"
#include "qnlb/sdp.h"
#include "qnlb/solver.h"

using namespace qnlb;

static void BM_HermitianEigen(benchmark::State &state) {
    GramProgram g = build_program(static_cast<int>(state.range(0)), BoxParam(0.3));
    ComplexMatrix m = gram_from_protocol(static_cast<int>(state.range(0)), BoxParam(0.3));
    m += g.weights();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigen(m));
    }
    state.SetLabel("dim " + std::to_string(m.rows()));
}
BENCHMARK(BM_HermitianEigen)->DenseRange(1, 4);

static void BM_DenseValue(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(protocol_p_value_dense(n, BoxParam(0.25)));
    }
}
BENCHMARK(BM_DenseValue)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

static void BM_ParityBruteforce(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parity_value_bruteforce(n, BoxParam(0.25)));
    }
}
BENCHMARK(BM_ParityBruteforce)->Arg(4)->Arg(12);

static void BM_SolvePrimal(benchmark::State &state) {
    GramProgram g = build_program(static_cast<int>(state.range(0)), BoxParam(0.25));
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_primal(g));
    }
}
BENCHMARK(BM_SolvePrimal)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_VerifyOptimality(benchmark::State &state) {
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_optimality(n, BoxParam(0.3)));
    }
}
BENCHMARK(BM_VerifyOptimality)->DenseRange(1, 3);

BENCHMARK_MAIN();
