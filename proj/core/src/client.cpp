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

#include "qveil/client.hpp"

#include <httplib.h>

#include "qveil/errors.hpp"
#include "qveil/service.hpp"

namespace qveil {

using nlohmann::json;

struct HttpCloudClient::Impl {
    std::string base_url;
    httplib::Client http;

    explicit Impl(std::string url) : base_url(std::move(url)), http(base_url) {
        http.set_keep_alive(true);
        http.set_connection_timeout(10);
        http.set_read_timeout(60);
    }
};

HttpCloudClient::HttpCloudClient(std::string base_url)
    : impl_(std::make_unique<Impl>(std::move(base_url))) {}

HttpCloudClient::~HttpCloudClient() = default;

namespace {

[[noreturn]] void raise_http_error(const std::string& what, const httplib::Result& result) {
    if (!result) {
        throw TransportError(what + ": " + httplib::to_string(result.error()));
    }
    std::string detail = "HTTP " + std::to_string(result->status);
    try {
        const json body = json::parse(result->body);
        if (body.contains("error")) {
            detail += " [" + body["error"].value("code", std::string("unknown")) + "] " +
                      body["error"].value("message", std::string{});
        }
    } catch (const json::parse_error&) {
        detail += " (unparseable body)";
    }
    throw ProtocolError(what + ": " + detail);
}

}  // namespace

RunResponse HttpCloudClient::run(const RunRequest& request) {
    const auto result =
        impl_->http.Post("/v1/run", request.canonical(), "application/json");
    if (!result || result->status != 200) raise_http_error("run request failed", result);

    json body;
    try {
        body = json::parse(result->body);
    } catch (const json::parse_error& e) {
        throw ProtocolError(std::string("malformed run response: ") + e.what());
    }
    RunResponse resp = RunResponse::from_json(body);
    const std::size_t expected = std::size_t{1} << request.n;
    if (resp.probs.size() != expected) {
        throw ProtocolError("response length " + std::to_string(resp.probs.size()) +
                            " does not match 2^n = " + std::to_string(expected));
    }
    return resp;
}

HealthInfo HttpCloudClient::health() {
    const auto result = impl_->http.Get("/v1/health");
    if (!result || result->status != 200) raise_http_error("health request failed", result);
    const json body = json::parse(result->body);
    return {body.value("version", std::string{}), body.value("max_qubits", 0)};
}

RunResponse LocalCloudClient::run(const RunRequest& request) {
    // Round-trip through the wire schema so in-process use exercises the
    // same parsing, validation and logging as remote use.
    const json body = json::parse(request.canonical());
    return RunResponse::from_json(service_.handle_run_json(body));
}

HealthInfo LocalCloudClient::health() { return service_.health(); }

}  // namespace qveil
