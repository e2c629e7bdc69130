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

#include <stdexcept>
#include <string>

namespace qveil {

// Request failed to reach the service (connect/read/write failure).
struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The service answered but the exchange violated the wire contract
// (non-2xx status, malformed body, inconsistent response lengths).
struct ProtocolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Service could not start (bind failure, bad log path).
struct StartupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request rejected by the service, with a machine-readable code that is
// also sent over the wire as {"error": {"code": ..., "message": ...}}.
struct ServiceError : std::runtime_error {
    std::string code;
    int http_status;

    ServiceError(std::string code_, int http_status_, const std::string& message)
        : std::runtime_error(message), code(std::move(code_)), http_status(http_status_) {}
};

}  // namespace qveil
