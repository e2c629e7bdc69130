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
#include <optional>

namespace qveil {

// Outcome of comparing the superposition probability of one output index
// against the two basis probabilities it interferes between.
//
//   Plus / Minus:  the amplitude behind p_i has the same / opposite sign as
//                  the amplitude behind p_r.
//   Irrelevant:    p_i is zero; the entry's amplitude vanishes and carries
//                  no sign.
//   Undetermined:  p_r is zero while p_i is not; this reference cannot
//                  anchor the row and a fallback reference is needed.
enum class SignOutcome : std::int8_t { Plus, Minus, Irrelevant, Undetermined };

struct SignTolerances {
    // Probabilities at or below this are treated as exact zeros.
    double eps_zero = 1e-12;
    // Minimum |2*p_ri - (p_r + p_i)| required to call the decision
    // confident. Zero in exact mode.
    double delta_commit = 0.0;

    static SignTolerances exact() { return {1e-12, 0.0}; }

    // Shot mode: the zero threshold scales like zero_coeff/shots and the
    // commit margin like three standard deviations of the discriminant
    // estimate.
    static SignTolerances sampled(std::uint64_t shots, double zero_coeff = 10.0);
};

struct SignDecision {
    SignOutcome outcome = SignOutcome::Plus;
    // 2*p_ri - (p_r + p_i); equals twice the product of the two signed
    // amplitudes when the inputs are exact.
    double discriminant = 0.0;
    // False when the discriminant is inside the commit margin; the caller
    // may re-measure before trusting the outcome.
    bool confident = true;

    int sign() const { return outcome == SignOutcome::Minus ? -1 : +1; }
};

// Decides the relative sign from the three probabilities of one output
// index m: p_r = p_m(reference basis input), p_i = p_m(basis input i),
// p_ri = p_m(superposition of the two). All cases are encoded in the
// result; nothing throws.
SignDecision recover_sign(double p_r, double p_i, double p_ri, const SignTolerances& tol);

// Commit margin for a discriminant estimated from `shots` samples.
double sign_commit_margin(double p_r, double p_i, std::uint64_t shots);

}  // namespace qveil
