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

#include "qveil/run.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "qveil/rng.hpp"

namespace qveil {

ProbabilityVector run_exact(const AnsatzSpec& ansatz, const ObservableRotation& observable,
                            const InputStateSpec& input) {
    ansatz.validate();
    observable.validate(ansatz.n);
    input.validate(ansatz.n);

    StateVector state(ansatz.n);
    const auto prep = prepare_input(input, ansatz.n);
    apply_circuit(state, prep);
    const auto body = build_real_amplitudes(ansatz);
    apply_circuit(state, body);
    apply_circuit(state, observable.gates);
    return state.probabilities();
}

ProbabilityVector sample_distribution(const ProbabilityVector& exact, std::uint64_t shots,
                                      std::uint64_t seed) {
    if (shots == 0) throw std::invalid_argument("shots must be >= 1");

    std::vector<double> cdf(exact.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < exact.size(); ++m) {
        acc += exact[m];
        cdf[m] = acc;
    }

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> counts(exact.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = uniform_unit(rng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t m = std::min(static_cast<std::size_t>(it - cdf.begin()),
                                       exact.size() - 1);
        ++counts[m];
    }

    ProbabilityVector freq(exact.size());
    for (std::size_t m = 0; m < exact.size(); ++m) {
        freq[m] = static_cast<double>(counts[m]) / static_cast<double>(shots);
    }
    return freq;
}

ProbabilityVector run_sampled(const AnsatzSpec& ansatz, const ObservableRotation& observable,
                              const InputStateSpec& input, std::uint64_t shots,
                              std::uint64_t seed) {
    return sample_distribution(run_exact(ansatz, observable, input), shots, seed);
}

}  // namespace qveil
