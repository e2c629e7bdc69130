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

#include "qveil/prepare.hpp"

#include <bit>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qveil {

namespace {

inline bool bit_of(std::uint64_t value, int n, int q) {
    return (value >> (n - 1 - q)) & 1;
}

}  // namespace

void InputStateSpec::validate(int n) const {
    const std::uint64_t dim = std::uint64_t{1} << n;
    if (i >= dim) {
        throw std::out_of_range("input index i=" + std::to_string(i) + " out of range for n=" +
                                std::to_string(n));
    }
    if (kind == Kind::Superposition) {
        if (r >= dim) {
            throw std::out_of_range("input index r=" + std::to_string(r) +
                                    " out of range for n=" + std::to_string(n));
        }
        if (r == i) {
            throw std::invalid_argument("superposition input requires r != i");
        }
    }
}

std::vector<Gate> prepare_input(const InputStateSpec& spec, int n) {
    spec.validate(n);
    std::vector<Gate> gates;

    if (spec.kind == InputStateSpec::Kind::Basis) {
        for (int q = 0; q < n; ++q) {
            if (bit_of(spec.i, n, q)) gates.push_back(Gate::x(q));
        }
        return gates;
    }

    // Orient the pair so the pivot bit is 0 in lo; the target state is
    // symmetric in (r, i), so this is only a relabeling.
    std::uint64_t lo = spec.r;
    std::uint64_t hi = spec.i;
    const std::uint64_t diff = lo ^ hi;
    int pivot = -1;
    for (int q = 0; q < n; ++q) {
        if (bit_of(diff, n, q)) {
            pivot = q;
            break;
        }
    }
    if (bit_of(lo, n, pivot)) std::swap(lo, hi);

    for (int q = 0; q < n; ++q) {
        if (bit_of(lo, n, q) && bit_of(hi, n, q)) gates.push_back(Gate::x(q));
    }
    gates.push_back(Gate::ry(pivot, std::numbers::pi / 2.0));
    for (int q = 0; q < n; ++q) {
        if (q == pivot || !bit_of(diff, n, q)) continue;
        if (bit_of(lo, n, q)) gates.push_back(Gate::x(q));
        gates.push_back(Gate::cx(pivot, q));
    }
    return gates;
}

double mean_basis_prep_x_count(int n) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < dim; ++i) total += static_cast<std::uint64_t>(std::popcount(i));
    return static_cast<double>(total) / static_cast<double>(dim);
}

PrepCxStats superposition_prep_cx_stats(int n) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::uint64_t total = 0;
    int max_cx = 0;
    std::uint64_t pairs = 0;
    for (std::uint64_t r = 0; r < dim; ++r) {
        for (std::uint64_t i = r + 1; i < dim; ++i) {
            const int cx = std::popcount(r ^ i) - 1;
            total += static_cast<std::uint64_t>(cx);
            if (cx > max_cx) max_cx = cx;
            ++pairs;
        }
    }
    return {static_cast<double>(total) / static_cast<double>(pairs), max_cx};
}

}  // namespace qveil
