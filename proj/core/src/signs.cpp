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

#include "qveil/signs.hpp"

#include <algorithm>
#include <cmath>

namespace qveil {

SignTolerances SignTolerances::sampled(std::uint64_t shots, double zero_coeff) {
    SignTolerances tol;
    tol.eps_zero = std::max(1e-12, zero_coeff / static_cast<double>(shots));
    tol.delta_commit = -1.0;  // computed per decision from p_r, p_i
    return tol;
}

double sign_commit_margin(double p_r, double p_i, std::uint64_t shots) {
    if (shots == 0) return 0.0;
    return 3.0 * std::sqrt((p_r + p_i) / static_cast<double>(shots));
}

SignDecision recover_sign(double p_r, double p_i, double p_ri, const SignTolerances& tol) {
    SignDecision d;
    d.discriminant = 2.0 * p_ri - (p_r + p_i);

    if (p_i <= tol.eps_zero) {
        d.outcome = SignOutcome::Irrelevant;
        return d;
    }
    if (p_r <= tol.eps_zero) {
        d.outcome = SignOutcome::Undetermined;
        return d;
    }

    d.outcome = d.discriminant >= 0.0 ? SignOutcome::Plus : SignOutcome::Minus;
    if (tol.delta_commit > 0.0) {
        d.confident = std::abs(d.discriminant) > tol.delta_commit;
    }
    return d;
}

}  // namespace qveil
