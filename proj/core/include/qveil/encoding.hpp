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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace qveil {

// Coefficient vector of an encoded sample: the circuit-facing picture is
// the unit vector f/c over basis states. Encoders run on the data owner's
// side only and never enter any cloud request.
struct CoefficientVector {
    std::vector<double> f;
    double c = 1.0;

    std::vector<double> normalized() const;
    std::size_t size() const { return f.size(); }
};

// f_i = x_i with c = |x|. Throws std::invalid_argument on the zero vector.
CoefficientVector amplitude_encode(std::span<const double> x);

// Per-qubit pair map producing the two real amplitudes of one qubit from
// two consecutive features. The default sends (u, v) to
// (cos(u + v), sin(u + v)), which is unit-norm by construction.
using QubitPairFn = std::function<std::pair<double, double>(double, double)>;

std::pair<double, double> default_qubit_pair(double u, double v);

// Tensor-product encoding over n qubits, two features per qubit; a missing
// trailing feature is treated as zero. The result has length 2^n and c = 1.
// Throws std::invalid_argument when x has more than 2n entries.
CoefficientVector qubit_encode(std::span<const double> x, int n,
                               const QubitPairFn& pair_fn = default_qubit_pair);

// Zero-extends f to d_target entries; the normalization constant is kept.
CoefficientVector pad_features(CoefficientVector f, std::size_t d_target);

// Serializable choice of encoder for model files.
struct EncoderSpec {
    enum class Kind { Amplitude, Qubit };

    Kind kind = Kind::Amplitude;
    int n = 0;  // Qubit encoding target register size

    CoefficientVector encode(std::span<const double> x) const;
    std::size_t output_dim(std::size_t feature_dim) const;

    nlohmann::json to_json() const;
    static EncoderSpec from_json(const nlohmann::json& j);
};

}  // namespace qveil
