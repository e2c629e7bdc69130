// Copyright 2026 The qveil authors
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

#include <random>

#include <benchmark/benchmark.h>

#include "qveil/rng.hpp"
#include "qveil/run.hpp"

namespace {

using namespace qveil;

AnsatzSpec make_ansatz(int n, int reps, Entanglement ent) {
    AnsatzSpec spec;
    spec.n = n;
    spec.reps = reps;
    spec.entanglement = ent;
    spec.thetas.resize(static_cast<std::size_t>(spec.parameter_count()));
    std::mt19937_64 rng(5);
    for (double& t : spec.thetas) t = uniform_angle(rng);
    return spec;
}

void BM_ry_kernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector s(n);
    apply_gate(s, Gate::ry(0, 0.7));
    for (auto _ : state) {
        apply_gate(s, Gate::ry(n / 2, 0.3));
        benchmark::DoNotOptimize(s.amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.dim()));
}
BENCHMARK(BM_ry_kernel)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_cx_kernel(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    StateVector s(n);
    apply_gate(s, Gate::ry(0, 0.7));
    for (auto _ : state) {
        apply_gate(s, Gate::cx(0, n - 1));
        benchmark::DoNotOptimize(s.amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(s.dim()));
}
BENCHMARK(BM_cx_kernel)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_run_exact_full(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const AnsatzSpec spec = make_ansatz(n, 2, Entanglement::Full);
    for (auto _ : state) {
        auto probs = run_exact(spec, {}, InputStateSpec::basis(1));
        benchmark::DoNotOptimize(probs.data());
    }
}
BENCHMARK(BM_run_exact_full)->Arg(4)->Arg(8)->Arg(12);

void BM_superposition_prep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const std::uint64_t i = (std::uint64_t{1} << n) - 1;
    for (auto _ : state) {
        auto gates = prepare_input(InputStateSpec::superposition(0, i), n);
        benchmark::DoNotOptimize(gates.data());
    }
}
BENCHMARK(BM_superposition_prep)->Arg(8)->Arg(16);

}  // namespace
