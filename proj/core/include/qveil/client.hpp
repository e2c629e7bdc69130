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

#include <memory>
#include <string>

#include "qveil/wire.hpp"

namespace qveil {

class CloudService;

// Client-side view of the cloud. Implementations must return the full
// probability vector for the request and surface transport/contract
// failures as TransportError / ProtocolError.
class CloudClient {
  public:
    virtual ~CloudClient() = default;
    virtual RunResponse run(const RunRequest& request) = 0;
    virtual HealthInfo health() = 0;
};

// Talks to a CloudService over HTTP/1.1 + JSON.
class HttpCloudClient : public CloudClient {
  public:
    explicit HttpCloudClient(std::string base_url);
    ~HttpCloudClient() override;

    RunResponse run(const RunRequest& request) override;
    HealthInfo health() override;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Drives an in-process CloudService through the same JSON schema and
// validation path as the HTTP transport; requests are logged identically.
class LocalCloudClient : public CloudClient {
  public:
    explicit LocalCloudClient(CloudService& service) : service_(service) {}

    RunResponse run(const RunRequest& request) override;
    HealthInfo health() override;

  private:
    CloudService& service_;
};

}  // namespace qveil
