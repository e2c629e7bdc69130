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

#include <string>
#include <vector>

#include "qveil/simulator.hpp"

namespace qveil {

enum class Entanglement { Full, Linear };

std::string to_string(Entanglement e);
Entanglement entanglement_from_string(const std::string& s);

// Alternating RY / CX layer circuit over real amplitudes: an initial RY
// layer, then `reps` blocks of one CX layer followed by one RY layer.
// thetas holds n*(reps+1) angles, layer-major (layer L, qubit q at
// index L*n + q).
struct AnsatzSpec {
    int n = 0;
    int reps = 1;
    Entanglement entanglement = Entanglement::Full;
    std::vector<double> thetas;

    int parameter_count() const { return n * (reps + 1); }

    // Throws std::invalid_argument when n, reps, or the thetas length is
    // inconsistent.
    void validate() const;
};

// Basis-change circuit applied after the ansatz, before measurement in the
// computational basis. Empty means measure directly.
struct ObservableRotation {
    std::vector<Gate> gates;

    void validate(int n) const;
};

// Expands the ansatz into its gate list.
//
// Full entanglement emits CX(a -> b) for every pair a < b, control on the
// lower index; Linear emits CX(k -> k+1) for k = 0..n-2.
std::vector<Gate> build_real_amplitudes(const AnsatzSpec& spec);

}  // namespace qveil
