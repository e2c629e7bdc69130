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

#include "qveil/ansatz.hpp"

#include <stdexcept>

namespace qveil {

std::string to_string(Entanglement e) {
    return e == Entanglement::Full ? "full" : "linear";
}

Entanglement entanglement_from_string(const std::string& s) {
    if (s == "full") return Entanglement::Full;
    if (s == "linear") return Entanglement::Linear;
    throw std::invalid_argument("unknown entanglement '" + s + "' (expected full or linear)");
}

void AnsatzSpec::validate() const {
    if (n < 1 || n > 24) {
        throw std::invalid_argument("ansatz qubit count must be in [1, 24], got " +
                                    std::to_string(n));
    }
    if (reps < 1) {
        throw std::invalid_argument("ansatz repetitions must be >= 1, got " +
                                    std::to_string(reps));
    }
    if (thetas.size() != static_cast<std::size_t>(parameter_count())) {
        throw std::invalid_argument("ansatz needs n*(reps+1) = " +
                                    std::to_string(parameter_count()) + " thetas, got " +
                                    std::to_string(thetas.size()));
    }
}

void ObservableRotation::validate(int n) const {
    for (const Gate& g : gates) g.validate(n);
}

std::vector<Gate> build_real_amplitudes(const AnsatzSpec& spec) {
    spec.validate();
    std::vector<Gate> gates;

    auto ry_layer = [&](int layer) {
        for (int q = 0; q < spec.n; ++q) {
            gates.push_back(Gate::ry(q, spec.thetas[static_cast<std::size_t>(layer * spec.n + q)]));
        }
    };
    auto cx_layer = [&] {
        if (spec.entanglement == Entanglement::Full) {
            for (int a = 0; a < spec.n; ++a) {
                for (int b = a + 1; b < spec.n; ++b) gates.push_back(Gate::cx(a, b));
            }
        } else {
            for (int k = 0; k + 1 < spec.n; ++k) gates.push_back(Gate::cx(k, k + 1));
        }
    };

    ry_layer(0);
    for (int rep = 1; rep <= spec.reps; ++rep) {
        cx_layer();
        ry_layer(rep);
    }
    return gates;
}

}  // namespace qveil
