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

#include "qveil/encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace qveil {

using nlohmann::json;

std::vector<double> CoefficientVector::normalized() const {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] / c;
    return out;
}

CoefficientVector amplitude_encode(std::span<const double> x) {
    double norm_sq = 0.0;
    for (double v : x) {
        if (!std::isfinite(v)) throw std::invalid_argument("feature values must be finite");
        norm_sq += v * v;
    }
    if (norm_sq == 0.0) {
        throw std::invalid_argument("cannot amplitude-encode the zero vector");
    }
    CoefficientVector out;
    out.f.assign(x.begin(), x.end());
    out.c = std::sqrt(norm_sq);
    return out;
}

std::pair<double, double> default_qubit_pair(double u, double v) {
    return {std::cos(u + v), std::sin(u + v)};
}

CoefficientVector qubit_encode(std::span<const double> x, int n, const QubitPairFn& pair_fn) {
    if (n < 1 || n > 24) throw std::invalid_argument("qubit count out of range");
    if (x.size() > 2 * static_cast<std::size_t>(n)) {
        throw std::invalid_argument("qubit encoding of " + std::to_string(x.size()) +
                                    " features needs more than " + std::to_string(n) + " qubits");
    }
    for (double v : x) {
        if (!std::isfinite(v)) throw std::invalid_argument("feature values must be finite");
    }

    auto feature = [&](std::size_t idx) { return idx < x.size() ? x[idx] : 0.0; };

    std::vector<std::pair<double, double>> qubit_amps(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
        qubit_amps[static_cast<std::size_t>(q)] =
            pair_fn(feature(2 * static_cast<std::size_t>(q)),
                    feature(2 * static_cast<std::size_t>(q) + 1));
    }

    // Tensor expansion, qubit 0 most significant.
    CoefficientVector out;
    out.f.assign({1.0});
    for (int q = 0; q < n; ++q) {
        const auto [a, b] = qubit_amps[static_cast<std::size_t>(q)];
        std::vector<double> next(out.f.size() * 2);
        for (std::size_t idx = 0; idx < out.f.size(); ++idx) {
            next[2 * idx] = out.f[idx] * a;
            next[2 * idx + 1] = out.f[idx] * b;
        }
        out.f = std::move(next);
    }
    out.c = 1.0;
    return out;
}

CoefficientVector pad_features(CoefficientVector f, std::size_t d_target) {
    if (d_target < f.f.size()) {
        throw std::invalid_argument("pad target smaller than current length");
    }
    f.f.resize(d_target, 0.0);
    return f;
}

CoefficientVector EncoderSpec::encode(std::span<const double> x) const {
    if (kind == Kind::Amplitude) return amplitude_encode(x);
    return qubit_encode(x, n);
}

std::size_t EncoderSpec::output_dim(std::size_t feature_dim) const {
    if (kind == Kind::Amplitude) return feature_dim;
    return std::size_t{1} << n;
}

json EncoderSpec::to_json() const {
    if (kind == Kind::Amplitude) return json{{"type", "amplitude"}};
    return json{{"type", "qubit"}, {"n", n}};
}

EncoderSpec EncoderSpec::from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "amplitude") return {Kind::Amplitude, 0};
    if (type == "qubit") return {Kind::Qubit, j.at("n").get<int>()};
    throw std::invalid_argument("unknown encoder type '" + type + "'");
}

}  // namespace qveil
