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

#include "qveil/client.hpp"
#include "qveil/encoding.hpp"
#include "qveil/extraction.hpp"
#include "qveil/rng.hpp"
#include "qveil/service.hpp"
#include "qveil/trainer.hpp"

namespace {

using namespace qveil;

AnsatzSpec make_ansatz(int n, int reps) {
    AnsatzSpec spec;
    spec.n = n;
    spec.reps = reps;
    spec.entanglement = Entanglement::Full;
    spec.thetas.resize(static_cast<std::size_t>(spec.parameter_count()));
    std::mt19937_64 rng(17);
    for (double& t : spec.thetas) t = uniform_angle(rng);
    return spec;
}

// Full extraction against an in-process service; dominated by simulation
// plus JSON round-trips, which is the realistic client cost profile.
void BM_extract_b(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    CloudService service(ServiceConfig{});
    LocalCloudClient client(service);
    const AnsatzSpec spec = make_ansatz(n, 2);
    const int d = 1 << n;
    for (auto _ : state) {
        auto extraction = extract_b(client, spec, {}, d);
        benchmark::DoNotOptimize(extraction.b.entries.data());
    }
    state.SetItemsProcessed(state.iterations() * (2 * d - 1));
}
BENCHMARK(BM_extract_b)->Arg(2)->Arg(4)->Arg(6);

void BM_forward_pass(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int d = 1 << n;
    BMatrix b(n, d);
    std::mt19937_64 rng(23);
    for (double& v : b.entries) v = 2.0 * uniform_unit(rng) - 1.0;

    std::vector<double> x(static_cast<std::size_t>(d));
    for (double& v : x) v = uniform_unit(rng) + 0.1;
    const CoefficientVector f = amplitude_encode(x);

    for (auto _ : state) {
        auto result = forward(b, f);
        benchmark::DoNotOptimize(result.probs.data());
    }
    state.SetItemsProcessed(state.iterations() * d);
}
BENCHMARK(BM_forward_pass)->Arg(4)->Arg(8)->Arg(10);

void BM_sign_recovery_grid(benchmark::State& state) {
    const SignTolerances tol = SignTolerances::exact();
    for (auto _ : state) {
        double acc = 0.0;
        for (int a = 1; a <= 9; ++a) {
            for (int b = 1; b <= 9; ++b) {
                const double br = 0.1 * a;
                const double bi = 0.1 * b;
                const double p_ri = 0.5 * (br + bi) * (br + bi);
                acc += recover_sign(br * br, bi * bi, p_ri, tol).discriminant;
            }
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_sign_recovery_grid);

}  // namespace
