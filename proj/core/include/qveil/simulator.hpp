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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qveil {

// Measurement probabilities over the 2^n computational basis states.
using ProbabilityVector = std::vector<double>;

// State vector of an n-qubit register restricted to real amplitudes.
//
// The RY/CX/X gate set maps real vectors to real vectors, so a real
// representation is closed under every circuit this library builds; the
// type admits no imaginary parts by construction.
//
// Convention used throughout: basis index m is the big-endian reading of
// the ket bitstring. Qubit q (0-based, q = 0 leftmost in the ket) owns bit
// significance n-1-q, so for n = 5 the basis state with only the last ket
// character set is index 1.
struct StateVector {
    int n = 0;
    std::vector<double> amps;

    StateVector() = default;

    // Starts in basis state |basis_index>. Throws std::invalid_argument for
    // n outside [1, 24] and std::out_of_range for an index >= 2^n.
    explicit StateVector(int n_qubits, std::uint64_t basis_index = 0);

    std::size_t dim() const { return amps.size(); }

    // Squared L2 norm; 1 within 1e-10 after any gate sequence.
    double norm_sq() const;

    ProbabilityVector probabilities() const;
};

enum class GateKind { RY, CX, X };

// One element of the real gate set. `control` is meaningful for CX only,
// `theta` for RY only.
struct Gate {
    GateKind kind = GateKind::X;
    int qubit = 0;
    int control = -1;
    double theta = 0.0;

    static Gate ry(int qubit, double theta) { return {GateKind::RY, qubit, -1, theta}; }
    static Gate cx(int control, int target) { return {GateKind::CX, target, control, 0.0}; }
    static Gate x(int qubit) { return {GateKind::X, qubit, -1, 0.0}; }

    // Throws std::out_of_range / std::invalid_argument when indices do not
    // fit an n-qubit register (CX additionally requires control != qubit).
    void validate(int n) const;
};

// Applies one gate in place. Norm and realness are preserved.
void apply_gate(StateVector& state, const Gate& gate);

// Applies a gate sequence in program order.
void apply_circuit(StateVector& state, std::span<const Gate> gates);

// Probability that qubit k (1-based, leftmost ket character is k = 1) is
// measured as 1: the sum of probs[m] over all m with bit n-k set.
// Throws std::invalid_argument for k outside [1, n] or a non-power-of-two
// probability vector.
double marginal_g(const ProbabilityVector& probs, int k);

// All n marginals g_1..g_n, index 0 holding g_1.
std::vector<double> all_marginals(const ProbabilityVector& probs);

}  // namespace qveil
