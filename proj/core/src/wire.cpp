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

#include "qveil/wire.hpp"

#include <cstdio>

#include "qveil/errors.hpp"

namespace qveil {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& message) {
    throw ServiceError("schema_error", 400, message);
}

void expect_object(const json& j, const char* where) {
    if (!j.is_object()) schema_error(std::string(where) + " must be a JSON object");
}

// Strict field policy: every present key must be recognized. This is what
// keeps amplitude or feature payloads out of the schema entirely.
void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            if (item.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) schema_error("unknown field '" + item.key() + "' in " + where);
    }
}

int get_int(const json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        schema_error(std::string(where) + "." + key + " must be an integer");
    }
    return j.at(key).get<int>();
}

std::uint64_t get_index(const json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).is_number_float()) {
        schema_error(std::string(where) + "." + key + " must be an integer");
    }
    if (j.at(key).is_number_unsigned()) return j.at(key).get<std::uint64_t>();
    const auto v = j.at(key).get<std::int64_t>();
    if (v < 0) schema_error(std::string(where) + "." + key + " must be non-negative");
    return static_cast<std::uint64_t>(v);
}

double get_number(const json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        schema_error(std::string(where) + "." + key + " must be a number");
    }
    return j.at(key).get<double>();
}

std::vector<double> get_number_array(const json& j, const char* key, const char* where) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        schema_error(std::string(where) + "." + key + " must be an array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.at(key).size());
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) schema_error(std::string(where) + "." + key + " must hold numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

json gate_to_json(const Gate& g) {
    json j;
    switch (g.kind) {
        case GateKind::RY:
            j["kind"] = "ry";
            j["qubit"] = g.qubit;
            j["theta"] = g.theta;
            break;
        case GateKind::CX:
            j["kind"] = "cx";
            j["control"] = g.control;
            j["qubit"] = g.qubit;
            break;
        case GateKind::X:
            j["kind"] = "x";
            j["qubit"] = g.qubit;
            break;
    }
    return j;
}

Gate gate_from_json(const json& j) {
    expect_object(j, "observable.gates[]");
    if (!j.contains("kind") || !j.at("kind").is_string()) {
        schema_error("observable gate needs a string 'kind'");
    }
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ry") {
        reject_unknown_keys(j, {"kind", "qubit", "theta"}, "ry gate");
        return Gate::ry(get_int(j, "qubit", "gate"), get_number(j, "theta", "gate"));
    }
    if (kind == "cx") {
        reject_unknown_keys(j, {"kind", "qubit", "control"}, "cx gate");
        return Gate::cx(get_int(j, "control", "gate"), get_int(j, "qubit", "gate"));
    }
    if (kind == "x") {
        reject_unknown_keys(j, {"kind", "qubit"}, "x gate");
        return Gate::x(get_int(j, "qubit", "gate"));
    }
    schema_error("unknown gate kind '" + kind + "'");
}

}  // namespace

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

json input_to_json(const InputStateSpec& input) {
    json j;
    if (input.kind == InputStateSpec::Kind::Basis) {
        j["type"] = "basis";
        j["i"] = input.i;
    } else {
        j["type"] = "superposition";
        j["r"] = input.r;
        j["i"] = input.i;
    }
    return j;
}

InputStateSpec input_from_json(const json& j) {
    expect_object(j, "input");
    if (!j.contains("type") || !j.at("type").is_string()) {
        schema_error("input needs a string 'type'");
    }
    const std::string type = j.at("type").get<std::string>();
    if (type == "basis") {
        reject_unknown_keys(j, {"type", "i"}, "basis input");
        return InputStateSpec::basis(get_index(j, "i", "input"));
    }
    if (type == "superposition") {
        reject_unknown_keys(j, {"type", "r", "i"}, "superposition input");
        return InputStateSpec::superposition(get_index(j, "r", "input"),
                                             get_index(j, "i", "input"));
    }
    schema_error("input type must be 'basis' or 'superposition', got '" + type + "'");
}

json RunRequest::to_json() const {
    json j;
    j["n"] = n;
    j["ansatz"] = {{"reps", ansatz.reps},
                   {"entanglement", to_string(ansatz.entanglement)},
                   {"thetas", ansatz.thetas}};
    json gates = json::array();
    for (const Gate& g : observable.gates) gates.push_back(gate_to_json(g));
    j["observable"] = {{"gates", gates}};
    j["input"] = input_to_json(input);
    j["shots"] = shots ? json(*shots) : json(nullptr);
    return j;
}

RunRequest RunRequest::from_json(const json& j) {
    expect_object(j, "request");
    reject_unknown_keys(j, {"n", "ansatz", "observable", "input", "shots"}, "request");

    RunRequest req;
    req.n = get_int(j, "n", "request");

    if (!j.contains("ansatz")) schema_error("request.ansatz is required");
    const json& a = j.at("ansatz");
    expect_object(a, "ansatz");
    reject_unknown_keys(a, {"reps", "entanglement", "thetas"}, "ansatz");
    req.ansatz.n = req.n;
    req.ansatz.reps = get_int(a, "reps", "ansatz");
    if (!a.contains("entanglement") || !a.at("entanglement").is_string()) {
        schema_error("ansatz.entanglement must be a string");
    }
    try {
        req.ansatz.entanglement = entanglement_from_string(a.at("entanglement").get<std::string>());
    } catch (const std::invalid_argument& e) {
        schema_error(e.what());
    }
    req.ansatz.thetas = get_number_array(a, "thetas", "ansatz");

    if (j.contains("observable")) {
        const json& o = j.at("observable");
        expect_object(o, "observable");
        reject_unknown_keys(o, {"gates"}, "observable");
        if (!o.contains("gates") || !o.at("gates").is_array()) {
            schema_error("observable.gates must be an array");
        }
        for (const auto& g : o.at("gates")) req.observable.gates.push_back(gate_from_json(g));
    }

    if (!j.contains("input")) schema_error("request.input is required");
    req.input = input_from_json(j.at("input"));

    if (j.contains("shots") && !j.at("shots").is_null()) {
        if (!j.at("shots").is_number_integer()) schema_error("shots must be an integer or null");
        const auto s = j.at("shots").get<std::int64_t>();
        if (s <= 0) throw ServiceError("bad_shots", 400, "shots must be >= 1");
        req.shots = static_cast<std::uint64_t>(s);
    }
    return req;
}

std::string RunRequest::canonical() const { return to_json().dump(); }

std::string RunRequest::request_id() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical())));
    return std::string(buf);
}

void RunRequest::validate() const {
    if (n < 1 || n > 24) {
        throw ServiceError("bad_qubit_count", 400, "n must be in [1, 24]");
    }
    try {
        ansatz.validate();
    } catch (const std::exception& e) {
        throw ServiceError("invalid_ansatz", 400, e.what());
    }
    try {
        observable.validate(n);
    } catch (const std::exception& e) {
        throw ServiceError("invalid_observable", 400, e.what());
    }
    try {
        input.validate(n);
    } catch (const std::exception& e) {
        throw ServiceError("invalid_input", 400, e.what());
    }
    if (shots && *shots == 0) {
        throw ServiceError("bad_shots", 400, "shots must be >= 1");
    }
}

json RunResponse::to_json() const {
    json j;
    j["probs"] = probs;
    j["shots_used"] = shots_used ? json(*shots_used) : json(nullptr);
    j["request_id"] = request_id;
    return j;
}

RunResponse RunResponse::from_json(const json& j) {
    expect_object(j, "response");
    RunResponse resp;
    resp.probs = get_number_array(j, "probs", "response");
    if (j.contains("shots_used") && !j.at("shots_used").is_null()) {
        resp.shots_used = j.at("shots_used").get<std::uint64_t>();
    }
    if (j.contains("request_id") && j.at("request_id").is_string()) {
        resp.request_id = j.at("request_id").get<std::string>();
    }
    return resp;
}

json RequestLogEntry::to_json() const {
    json j;
    j["ts"] = timestamp;
    j["request_id"] = request_id;
    j["n"] = n;
    j["thetas"] = thetas;
    j["input"] = input_to_json(input);
    j["shots"] = shots ? json(*shots) : json(nullptr);
    return j;
}

RequestLogEntry RequestLogEntry::from_json(const json& j) {
    RequestLogEntry e;
    e.timestamp = j.value("ts", std::string{});
    e.request_id = j.value("request_id", std::string{});
    e.n = j.at("n").get<int>();
    e.thetas = j.at("thetas").get<std::vector<double>>();
    e.input = input_from_json(j.at("input"));
    if (j.contains("shots") && !j.at("shots").is_null()) {
        e.shots = j.at("shots").get<std::uint64_t>();
    }
    return e;
}

const std::vector<std::string>& run_request_key_allowlist() {
    static const std::vector<std::string> keys = {
        "n",
        "ansatz",
        "ansatz.reps",
        "ansatz.entanglement",
        "ansatz.thetas",
        "observable",
        "observable.gates",
        "observable.gates.kind",
        "observable.gates.qubit",
        "observable.gates.control",
        "observable.gates.theta",
        "input",
        "input.type",
        "input.i",
        "input.r",
        "shots",
    };
    return keys;
}

namespace {

void collect_paths(const json& j, const std::string& prefix, std::vector<std::string>& out) {
    if (j.is_object()) {
        for (const auto& item : j.items()) {
            const std::string path = prefix.empty() ? item.key() : prefix + "." + item.key();
            out.push_back(path);
            collect_paths(item.value(), path, out);
        }
    } else if (j.is_array()) {
        for (const auto& v : j) collect_paths(v, prefix, out);
    }
}

}  // namespace

std::vector<std::string> collect_key_paths(const json& j) {
    std::vector<std::string> out;
    collect_paths(j, "", out);
    return out;
}

}  // namespace qveil
