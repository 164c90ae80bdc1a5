// Copyright 2026 The sicrep Authors
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

#include "sicrep/channels.hpp"
#include "sicrep/dynamics.hpp"
#include "sicrep/measures.hpp"
#include "sicrep/numerics.hpp"

using namespace sicrep;

namespace {

RealMatrix qubit_generator() {
    const SicPovm sic = SicPovm::builtin_qubit();
    ComplexMatrix h(2, 2), v(2, 2);
    h << 0.5, cplx(0.1, -0.2), cplx(0.1, 0.2), -0.5;
    v << 0.1, 0.3, 0.0, -0.1;
    return lgen_from_gksl(GkslSpec{2, h, {v}}, sic).matrix;
}

void BM_Expm(benchmark::State& state) {
    const auto n = state.range(0);
    RealMatrix a = RealMatrix::Random(n, n);
    for (auto _ : state) benchmark::DoNotOptimize(numerics::expm(a));
}
BENCHMARK(BM_Expm)->Arg(4)->Arg(9)->Arg(16);

void BM_Logm(benchmark::State& state) {
    const RealMatrix s = numerics::expm(RealMatrix(0.5 * qubit_generator()));
    for (auto _ : state) benchmark::DoNotOptimize(numerics::logm_real(s));
}
BENCHMARK(BM_Logm);

void BM_ProjectCptp(benchmark::State& state) {
    const SicPovm sic = SicPovm::builtin_qubit();
    RealMatrix s = builtin_ptp(PtpMap::Transposition, sic).matrix;
    OptConfig opt;
    opt.restarts = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(project_cptp(s, sic, sic, opt));
}
BENCHMARK(BM_ProjectCptp)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_ProjectMark(benchmark::State& state) {
    const SicPovm sic = SicPovm::builtin_qubit();
    const RealMatrix l = qubit_generator();
    const RealMatrix dtilde = l - project_unit(l, basis_hunit(sic));
    const OmegaBasis omega(sic, basis_sigma(2));
    for (auto _ : state) benchmark::DoNotOptimize(project_mark(dtilde, omega));
}
BENCHMARK(BM_ProjectMark)->Unit(benchmark::kMillisecond);

void BM_DeltaQuant(benchmark::State& state) {
    const SicPovm sic = SicPovm::builtin_qubit();
    const UnitaryGenBasis b = basis_hunit(sic);
    const RealMatrix l = qubit_generator();
    for (auto _ : state) benchmark::DoNotOptimize(delta_quant(l, b));
}
BENCHMARK(BM_DeltaQuant)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
