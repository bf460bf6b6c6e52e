// Copyright 2026 The qdt Authors
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

#include "qdt/audit.hpp"
#include "qdt/behavioral.hpp"
#include "qdt/linalg.hpp"
#include "qdt/runner.hpp"
#include "qdt/sequential.hpp"
#include "qdt/space.hpp"

namespace {

using namespace qdt;

void BM_JointProbability(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0));
    const DensityState rho = random_state(d, d, 1);
    const ComplexMatrix u = random_unitary(d, 2);
    const ComplexMatrix p = projector_from_vector(random_unitary(d, 3).col(0));
    const ComplexMatrix q = projector_from_vector(random_unitary(d, 4).col(0));
    for (auto _ : st) benchmark::DoNotOptimize(joint_probability(rho, p, u, q));
}
BENCHMARK(BM_JointProbability)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_UnitaryFromHamiltonian(benchmark::State& st) {
    const int d = static_cast<int>(st.range(0));
    ComplexMatrix g = random_ginibre(d, d, 5);
    const ComplexMatrix h = (g + g.adjoint()) / 2.0;
    for (auto _ : st) benchmark::DoNotOptimize(unitary_from_hamiltonian(h, 0.7));
}
BENCHMARK(BM_UnitaryFromHamiltonian)->Arg(2)->Arg(8)->Arg(16);

void BM_ProspectDecomposition(benchmark::State& st) {
    const int da = static_cast<int>(st.range(0)), ds = 2;
    const DensityState rho = random_state(da * ds, da * ds, 6);
    const Prospect p(0, random_unitary(da, 7).col(0), EmotionVector(random_unitary(ds, 8).col(0)));
    for (auto _ : st) benchmark::DoNotOptimize(decompose_prospect(rho, p));
}
BENCHMARK(BM_ProspectDecomposition)->Arg(2)->Arg(8);

void BM_AuditTrials(benchmark::State& st) {
    const Scenario s = parse_scenario(R"({"ambient_dim": 4, "seed": 9})");
    for (auto _ : st) benchmark::DoNotOptimize(run_symmetry_audit(s, static_cast<std::size_t>(st.range(0)), 1));
}
BENCHMARK(BM_AuditTrials)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_SampleSequential(benchmark::State& st) {
    const Scenario s = parse_scenario(
        R"({"ambient_dim": 4, "initial_state": {"kind": "random", "rank": 4}, "evolution": {"kind": "random"}, "seed": 10})");
    for (auto _ : st)
        benchmark::DoNotOptimize(sample_cohort(s, static_cast<std::uint64_t>(st.range(0)), SampleProtocol::sequential, 1));
}
BENCHMARK(BM_SampleSequential)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
