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

#pragma once

#include <cstdint>

#include "qveil/ansatz.hpp"
#include "qveil/prepare.hpp"
#include "qveil/simulator.hpp"

namespace qveil {

// Exact probabilities of the circuit prep -> ansatz -> observable applied
// to |0...0>. Throws std::invalid_argument on any cross-spec dimension
// mismatch.
ProbabilityVector run_exact(const AnsatzSpec& ansatz, const ObservableRotation& observable,
                            const InputStateSpec& input);

// Normalized empirical frequencies of `shots` samples drawn from the exact
// distribution. Deterministic for a given seed. Throws
// std::invalid_argument when shots == 0.
ProbabilityVector run_sampled(const AnsatzSpec& ansatz, const ObservableRotation& observable,
                              const InputStateSpec& input, std::uint64_t shots,
                              std::uint64_t seed);

// Sampling step alone, reused by the service.
ProbabilityVector sample_distribution(const ProbabilityVector& exact, std::uint64_t shots,
                                      std::uint64_t seed);

}  // namespace qveil
