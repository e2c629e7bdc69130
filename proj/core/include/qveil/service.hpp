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

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qveil/wire.hpp"

namespace httplib {
class Server;
}

namespace qveil {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 0;  // 0 = pick an ephemeral port
    int max_qubits = 12;
    std::optional<std::uint64_t> rng_seed;  // absent = entropy-seeded
    std::string log_path;                   // empty = in-memory log only
};

// The quantum cloud endpoint. One capability is exposed: run a circuit on a
// basis or two-basis-superposition input and return measurement
// probabilities. Every served request is appended to an audit log whose
// schema carries indices, angles and shot counts only.
//
// HTTP surface:
//   GET  /v1/health -> {"version": ..., "max_qubits": ...}
//   POST /v1/run    -> RunResponse or {"error": {"code", "message"}}
//
// Requests are handled concurrently; the log is append-only behind a mutex
// and no simulator state is shared between requests.
class CloudService {
  public:
    explicit CloudService(ServiceConfig config);
    ~CloudService();

    CloudService(const CloudService&) = delete;
    CloudService& operator=(const CloudService&) = delete;

    // Binds and serves on a background thread. Throws StartupError when the
    // port cannot be bound or the log file cannot be opened.
    void start();
    void stop();
    bool running() const { return running_; }

    int port() const { return bound_port_; }
    std::string base_url() const;

    HealthInfo health() const;

    // Full request pipeline minus HTTP: validate, execute, log. Throws
    // ServiceError on rejection. Exact mode runs the state vector directly;
    // shot mode samples with a per-request seed derived from the configured
    // seed and an arrival counter, so identical request sequences against an
    // identically seeded service reproduce byte-identical responses.
    RunResponse handle_run(const RunRequest& request);

    // JSON-level entry used by both the HTTP handler and in-process clients.
    nlohmann::json handle_run_json(const nlohmann::json& body);

    // Snapshot of the append-ordered request log.
    std::vector<RequestLogEntry> audit_log() const;

    const ServiceConfig& config() const { return config_; }

  private:
    void append_log(RequestLogEntry entry);

    ServiceConfig config_;
    std::uint64_t base_seed_ = 0;
    std::atomic<std::uint64_t> sequence_{0};
    mutable std::mutex log_mutex_;
    std::vector<RequestLogEntry> log_;
    std::unique_ptr<httplib::Server> server_;
    std::thread server_thread_;
    std::atomic<bool> running_{false};
    int bound_port_ = 0;
};

// Reads a newline-delimited JSON request log written by a service.
std::vector<RequestLogEntry> read_request_log(const std::string& path);

}  // namespace qveil
