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
#include <vector>

#include "qveil/simulator.hpp"

namespace qveil {

// Input state requested from the cloud. These two variants are the only
// state forms a client can ask for; arbitrary amplitude payloads are not
// expressible.
struct InputStateSpec {
    enum class Kind { Basis, Superposition };

    Kind kind = Kind::Basis;
    std::uint64_t i = 0;  // basis index
    std::uint64_t r = 0;  // second basis index, Superposition only

    static InputStateSpec basis(std::uint64_t i) { return {Kind::Basis, i, 0}; }
    static InputStateSpec superposition(std::uint64_t r, std::uint64_t i) {
        return {Kind::Superposition, i, r};
    }

    // Throws std::out_of_range for indices >= 2^n and std::invalid_argument
    // for a Superposition with r == i.
    void validate(int n) const;
};

// Builds the preparation circuit for the requested input on n qubits.
//
// Basis(i): one X per set bit of i, producing e_i exactly.
// Superposition(r, i): X on every bit set in both indices, RY(pi/2) on a
// pivot differing bit (oriented so the pivot is 0 in r), then per remaining
// differing bit b an optional X(b) (when r has 1 there) followed by
// CX(pivot -> b). Produces (e_r + e_i)/sqrt(2) exactly, with a positive
// relative sign.
std::vector<Gate> prepare_input(const InputStateSpec& spec, int n);

// Gate-count accounting for preparation circuits.

// Mean number of X gates over all 2^n basis preparations; equals n/2.
double mean_basis_prep_x_count(int n);

struct PrepCxStats {
    double mean_cx = 0.0;
    int max_cx = 0;
};

// CX counts of superposition preparation over all unordered pairs r != i.
// Each pair needs popcount(r xor i) - 1 CX gates, so max_cx = n - 1.
PrepCxStats superposition_prep_cx_stats(int n);

}  // namespace qveil
