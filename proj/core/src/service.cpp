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

#include "qveil/service.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>

#include <httplib.h>

#include "qveil/errors.hpp"
#include "qveil/rng.hpp"
#include "qveil/run.hpp"
#include "qveil/version.hpp"

namespace qveil {

using nlohmann::json;

namespace {

std::string utc_timestamp() {
    using namespace std::chrono;
    const auto now = system_clock::now();
    const auto secs = time_point_cast<seconds>(now);
    const auto millis = duration_cast<milliseconds>(now - secs).count();
    const std::time_t t = system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec,
                  static_cast<int>(millis));
    return buf;
}

json error_body(const std::string& code, const std::string& message) {
    return json{{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace

CloudService::CloudService(ServiceConfig config) : config_(std::move(config)) {
    base_seed_ = config_.rng_seed ? *config_.rng_seed : std::random_device{}();
}

CloudService::~CloudService() { stop(); }

std::string CloudService::base_url() const {
    return "http://" + config_.host + ":" + std::to_string(bound_port_);
}

HealthInfo CloudService::health() const { return {QVEIL_VERSION, config_.max_qubits}; }

RunResponse CloudService::handle_run(const RunRequest& request) {
    request.validate();
    if (request.n > config_.max_qubits) {
        throw ServiceError("max_qubits_exceeded", 422,
                           "n=" + std::to_string(request.n) + " exceeds the configured maximum " +
                               std::to_string(config_.max_qubits));
    }

    const std::uint64_t seq = sequence_.fetch_add(1);

    RunResponse resp;
    resp.request_id = request.request_id();
    if (request.shots) {
        const std::uint64_t seed = mix_seed(base_seed_, seq);
        resp.probs = run_sampled(request.ansatz, request.observable, request.input,
                                 *request.shots, seed);
        resp.shots_used = *request.shots;
    } else {
        resp.probs = run_exact(request.ansatz, request.observable, request.input);
    }

    RequestLogEntry entry;
    entry.timestamp = utc_timestamp();
    entry.request_id = resp.request_id;
    entry.n = request.n;
    entry.thetas = request.ansatz.thetas;
    entry.input = request.input;
    entry.shots = request.shots;
    append_log(std::move(entry));

    return resp;
}

json CloudService::handle_run_json(const json& body) {
    return handle_run(RunRequest::from_json(body)).to_json();
}

void CloudService::append_log(RequestLogEntry entry) {
    std::lock_guard<std::mutex> lock(log_mutex_);
    if (!config_.log_path.empty()) {
        std::ofstream out(config_.log_path, std::ios::app);
        if (!out) throw StartupError("cannot open request log " + config_.log_path);
        out << entry.to_json().dump() << "\n";
    }
    log_.push_back(std::move(entry));
}

std::vector<RequestLogEntry> CloudService::audit_log() const {
    std::lock_guard<std::mutex> lock(log_mutex_);
    return log_;
}

void CloudService::start() {
    if (running_) return;

    if (!config_.log_path.empty()) {
        std::ofstream probe(config_.log_path, std::ios::app);
        if (!probe) throw StartupError("cannot open request log " + config_.log_path);
    }

    server_ = std::make_unique<httplib::Server>();

    // httplib's defaults include SO_REUSEPORT, which lets two services share
    // one port; a taken port must be a hard startup failure instead.
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes),
                   sizeof(yes));
    });

    server_->Get("/v1/health", [this](const httplib::Request&, httplib::Response& res) {
        const HealthInfo info = health();
        res.set_content(json{{"version", info.version}, {"max_qubits", info.max_qubits}}.dump(),
                        "application/json");
    });

    server_->Post("/v1/run", [this](const httplib::Request& req, httplib::Response& res) {
        json body;
        try {
            body = json::parse(req.body);
        } catch (const json::parse_error& e) {
            res.status = 400;
            res.set_content(error_body("bad_json", e.what()).dump(), "application/json");
            return;
        }
        try {
            res.set_content(handle_run_json(body).dump(), "application/json");
        } catch (const ServiceError& e) {
            res.status = e.http_status;
            res.set_content(error_body(e.code, e.what()).dump(), "application/json");
        } catch (const std::exception& e) {
            res.status = 500;
            res.set_content(error_body("internal_error", e.what()).dump(), "application/json");
        }
    });

    if (config_.port == 0) {
        bound_port_ = server_->bind_to_any_port(config_.host);
        if (bound_port_ <= 0) throw StartupError("cannot bind to " + config_.host);
    } else {
        if (!server_->bind_to_port(config_.host, config_.port)) {
            throw StartupError("cannot bind to " + config_.host + ":" +
                               std::to_string(config_.port));
        }
        bound_port_ = config_.port;
    }

    server_thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    running_ = true;
}

void CloudService::stop() {
    if (server_) server_->stop();
    if (server_thread_.joinable()) server_thread_.join();
    running_ = false;
}

std::vector<RequestLogEntry> read_request_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open request log " + path);
    std::vector<RequestLogEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        entries.push_back(RequestLogEntry::from_json(json::parse(line)));
    }
    return entries;
}

}  // namespace qveil
