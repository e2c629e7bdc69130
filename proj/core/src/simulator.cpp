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

#include "qveil/simulator.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qveil {

namespace {

// Bit significance of qubit q in an n-qubit register (q = 0 is the most
// significant ket character).
inline std::uint64_t qubit_mask(int n, int q) {
    return std::uint64_t{1} << (n - 1 - q);
}

int qubit_count_for_dim(std::size_t dim) {
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("probability vector length must be a power of two >= 2");
    }
    return std::countr_zero(dim);
}

}  // namespace

StateVector::StateVector(int n_qubits, std::uint64_t basis_index) : n(n_qubits) {
    if (n_qubits < 1 || n_qubits > 24) {
        throw std::invalid_argument("qubit count must be in [1, 24], got " +
                                    std::to_string(n_qubits));
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (basis_index >= dim) {
        throw std::out_of_range("basis index " + std::to_string(basis_index) +
                                " out of range for " + std::to_string(n_qubits) + " qubits");
    }
    amps.assign(dim, 0.0);
    amps[basis_index] = 1.0;
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (double a : amps) s += a * a;
    return s;
}

ProbabilityVector StateVector::probabilities() const {
    ProbabilityVector p(amps.size());
    for (std::size_t m = 0; m < amps.size(); ++m) p[m] = amps[m] * amps[m];
    return p;
}

void Gate::validate(int n) const {
    if (qubit < 0 || qubit >= n) {
        throw std::out_of_range("gate qubit " + std::to_string(qubit) +
                                " out of range for n=" + std::to_string(n));
    }
    if (kind == GateKind::CX) {
        if (control < 0 || control >= n) {
            throw std::out_of_range("gate control " + std::to_string(control) +
                                    " out of range for n=" + std::to_string(n));
        }
        if (control == qubit) {
            throw std::invalid_argument("CX control and target must differ");
        }
    }
}

void apply_gate(StateVector& state, const Gate& gate) {
    gate.validate(state.n);
    const std::size_t dim = state.amps.size();
    const std::uint64_t tmask = qubit_mask(state.n, gate.qubit);
    double* a = state.amps.data();

    switch (gate.kind) {
        case GateKind::RY: {
            const double c = std::cos(gate.theta / 2.0);
            const double s = std::sin(gate.theta / 2.0);
            for (std::size_t m = 0; m < dim; ++m) {
                if ((m & tmask) == 0) {
                    const std::size_t m1 = m | tmask;
                    const double a0 = a[m];
                    const double a1 = a[m1];
                    a[m] = c * a0 - s * a1;
                    a[m1] = s * a0 + c * a1;
                }
            }
            break;
        }
        case GateKind::X: {
            for (std::size_t m = 0; m < dim; ++m) {
                if ((m & tmask) == 0) std::swap(a[m], a[m | tmask]);
            }
            break;
        }
        case GateKind::CX: {
            const std::uint64_t cmask = qubit_mask(state.n, gate.control);
            for (std::size_t m = 0; m < dim; ++m) {
                if ((m & cmask) != 0 && (m & tmask) == 0) std::swap(a[m], a[m | tmask]);
            }
            break;
        }
    }
}

void apply_circuit(StateVector& state, std::span<const Gate> gates) {
    for (const Gate& g : gates) apply_gate(state, g);
}

double marginal_g(const ProbabilityVector& probs, int k) {
    const int n = qubit_count_for_dim(probs.size());
    if (k < 1 || k > n) {
        throw std::invalid_argument("marginal index k must be in [1, n], got " +
                                    std::to_string(k));
    }
    const std::uint64_t mask = std::uint64_t{1} << (n - k);
    double g = 0.0;
    for (std::size_t m = 0; m < probs.size(); ++m) {
        if (m & mask) g += probs[m];
    }
    return g;
}

std::vector<double> all_marginals(const ProbabilityVector& probs) {
    const int n = qubit_count_for_dim(probs.size());
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) g[static_cast<std::size_t>(k - 1)] = marginal_g(probs, k);
    return g;
}

}  // namespace qveil
