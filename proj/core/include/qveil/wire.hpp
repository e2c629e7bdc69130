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
#include <string>
#include <vector>

#include <json.hpp>

#include "qveil/ansatz.hpp"
#include "qveil/prepare.hpp"
#include "qveil/simulator.hpp"

namespace qveil {

// One circuit execution request. The input field admits only basis indices
// and two-index superpositions; the schema has no field that could carry an
// amplitude vector or raw feature data, and parsing rejects unknown keys.
struct RunRequest {
    int n = 0;
    AnsatzSpec ansatz;
    ObservableRotation observable;
    InputStateSpec input;
    std::optional<std::uint64_t> shots;  // absent = exact mode

    nlohmann::json to_json() const;
    static RunRequest from_json(const nlohmann::json& j);

    // Sorted-key dump of to_json(); the basis for request ids and for
    // byte-level response comparisons.
    std::string canonical() const;

    // Content hash of the canonical form, hex encoded. Identical requests
    // map to identical ids.
    std::string request_id() const;

    // Semantic checks beyond JSON shape (ranges, theta count, r != i).
    // Throws ServiceError with a machine-readable code.
    void validate() const;
};

struct RunResponse {
    ProbabilityVector probs;
    std::optional<std::uint64_t> shots_used;
    std::string request_id;

    nlohmann::json to_json() const;
    static RunResponse from_json(const nlohmann::json& j);
};

// Audit record of one served request: indices, angles, and shot count only.
// There is deliberately no field able to hold feature data.
struct RequestLogEntry {
    std::string timestamp;
    std::string request_id;
    int n = 0;
    std::vector<double> thetas;
    InputStateSpec input;
    std::optional<std::uint64_t> shots;

    nlohmann::json to_json() const;
    static RequestLogEntry from_json(const nlohmann::json& j);
};

struct HealthInfo {
    std::string version;
    int max_qubits = 0;
};

nlohmann::json input_to_json(const InputStateSpec& input);
InputStateSpec input_from_json(const nlohmann::json& j);

// Every key path a RunRequest serialization may contain. Exposed so tests
// can assert the wire surface is closed.
const std::vector<std::string>& run_request_key_allowlist();

// Recursively collects the key paths present in a JSON document, dotted,
// with array elements flattened ("ansatz.thetas", "observable.gates.kind").
std::vector<std::string> collect_key_paths(const nlohmann::json& j);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace qveil
