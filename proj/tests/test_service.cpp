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

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>

#include <unistd.h>

#include <doctest.h>
#include <httplib.h>

#include "oracle.hpp"
#include "qveil/client.hpp"
#include "qveil/errors.hpp"
#include "qveil/extraction.hpp"
#include "qveil/run.hpp"
#include "qveil/service.hpp"
#include "qveil/version.hpp"

using namespace qveil;
namespace qt = qveil::testing;
using nlohmann::json;

namespace {

RunRequest make_request(int n, int reps, std::vector<double> thetas, InputStateSpec input,
                        std::optional<std::uint64_t> shots = std::nullopt) {
    RunRequest req;
    req.n = n;
    req.ansatz.n = n;
    req.ansatz.reps = reps;
    req.ansatz.entanglement = Entanglement::Full;
    req.ansatz.thetas = std::move(thetas);
    req.input = input;
    req.shots = shots;
    return req;
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) {
        path = std::string("/tmp/qveil_test_") + std::to_string(::getpid()) + "_" + name;
        std::remove(path.c_str());
    }
    ~TempPath() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("health endpoint reports version and limits") {
    CloudService service(ServiceConfig{});
    service.start();
    HttpCloudClient client(service.base_url());
    const HealthInfo info = client.health();
    CHECK(info.version == QVEIL_VERSION);
    CHECK(info.max_qubits == 12);
}

TEST_CASE("well-formed run requests execute") {
    CloudService service(ServiceConfig{});
    service.start();
    HttpCloudClient client(service.base_url());

    SUBCASE("identity circuit on the ground state") {
        const auto resp =
            client.run(make_request(2, 2, std::vector<double>(6, 0.0), InputStateSpec::basis(0)));
        CHECK(resp.probs == ProbabilityVector{1, 0, 0, 0});
        CHECK_FALSE(resp.shots_used.has_value());
        CHECK_FALSE(resp.request_id.empty());
    }
    SUBCASE("superposition input measured through the identity circuit") {
        const auto resp = client.run(
            make_request(2, 2, std::vector<double>(6, 0.0), InputStateSpec::superposition(0, 1)));
        CHECK(resp.probs[0] == doctest::Approx(0.5));
        CHECK(resp.probs[1] == doctest::Approx(0.5));
        CHECK(resp.probs[2] == doctest::Approx(0.0));
        CHECK(resp.probs[3] == doctest::Approx(0.0));
    }
}

TEST_CASE("malformed requests get machine-readable errors") {
    CloudService service(ServiceConfig{});
    service.start();
    httplib::Client raw(service.base_url());

    SUBCASE("wrong theta count") {
        auto req = make_request(2, 2, std::vector<double>(5, 0.0), InputStateSpec::basis(0));
        const auto res = raw.Post("/v1/run", req.canonical(), "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);
        const json body = json::parse(res->body);
        CHECK(body["error"]["code"] == "invalid_ansatz");
    }
    SUBCASE("unknown fields are rejected, not ignored") {
        auto req = make_request(2, 2, std::vector<double>(6, 0.0), InputStateSpec::basis(0));
        json j = req.to_json();
        j["input"]["amplitudes"] = {0.1, 0.2, 0.3};
        const auto res = raw.Post("/v1/run", j.dump(), "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == "schema_error");
    }
    SUBCASE("unparseable body") {
        const auto res = raw.Post("/v1/run", "{not json", "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == "bad_json");
    }
    SUBCASE("oversized registers hit the resource limit") {
        ServiceConfig small;
        small.max_qubits = 3;
        CloudService tiny(small);
        tiny.start();
        httplib::Client raw_tiny(tiny.base_url());
        auto req = make_request(4, 1, std::vector<double>(8, 0.0), InputStateSpec::basis(0));
        const auto res = raw_tiny.Post("/v1/run", req.canonical(), "application/json");
        REQUIRE(res);
        CHECK(res->status == 422);
        CHECK(json::parse(res->body)["error"]["code"] == "max_qubits_exceeded");
    }
    SUBCASE("superposition with equal indices") {
        auto req = make_request(2, 2, std::vector<double>(6, 0.0), InputStateSpec::basis(0));
        json j = req.to_json();
        j["input"] = {{"type", "superposition"}, {"r", 1}, {"i", 1}};
        const auto res = raw.Post("/v1/run", j.dump(), "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);
        CHECK(json::parse(res->body)["error"]["code"] == "invalid_input");
    }
}

TEST_CASE("exact-mode responses are byte-identical across repeats") {
    CloudService service(ServiceConfig{});
    service.start();
    httplib::Client raw(service.base_url());

    std::mt19937_64 rng(321);
    auto req = make_request(3, 2, qt::random_angles(9, rng), InputStateSpec::superposition(1, 5));
    const auto first = raw.Post("/v1/run", req.canonical(), "application/json");
    const auto second = raw.Post("/v1/run", req.canonical(), "application/json");
    REQUIRE(first);
    REQUIRE(second);
    CHECK(first->body == second->body);
}

TEST_CASE("seeded services reproduce sampled responses sequence for sequence") {
    std::mt19937_64 rng(99);
    const auto thetas = qt::random_angles(9, rng);

    auto run_sequence = [&](std::uint64_t seed) {
        ServiceConfig config;
        config.rng_seed = seed;
        CloudService service(config);
        service.start();
        HttpCloudClient client(service.base_url());
        std::vector<ProbabilityVector> outputs;
        for (std::uint64_t i = 0; i < 4; ++i) {
            outputs.push_back(
                client.run(make_request(3, 2, thetas, InputStateSpec::basis(i), 2000)).probs);
        }
        return outputs;
    };

    const auto a = run_sequence(7);
    const auto b = run_sequence(7);
    const auto c = run_sequence(8);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("loopback equivalence: service output equals a local run bit for bit") {
    CloudService service(ServiceConfig{});
    service.start();
    HttpCloudClient client(service.base_url());

    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const int reps = 1 + static_cast<int>(rng() % 2);
        auto req = make_request(n, reps,
                                qt::random_angles(static_cast<std::size_t>(n * (reps + 1)), rng),
                                InputStateSpec::basis(rng() % (std::uint64_t{1} << n)));
        if (trial % 2 == 1) {
            const std::uint64_t r = rng() % (std::uint64_t{1} << n);
            std::uint64_t i = rng() % (std::uint64_t{1} << n);
            if (i == r) i = (i + 1) % (std::uint64_t{1} << n);
            req.input = InputStateSpec::superposition(r, i);
        }

        const auto remote = client.run(req);
        const auto local = run_exact(req.ansatz, req.observable, req.input);
        CHECK(json(remote.probs).dump() == json(local).dump());
    }
}

TEST_CASE("audit log") {
    SUBCASE("fresh service has an empty log") {
        CloudService service(ServiceConfig{});
        service.start();
        CHECK(service.audit_log().empty());
    }

    SUBCASE("one extraction with a universal reference logs exactly 2d-1 runs") {
        TempPath log("audit.ndjson");
        ServiceConfig config;
        config.log_path = log.path;
        CloudService service(config);
        service.start();
        HttpCloudClient client(service.base_url());

        std::mt19937_64 rng(10);
        AnsatzSpec spec;
        spec.n = 2;
        spec.reps = 2;
        spec.entanglement = Entanglement::Full;
        spec.thetas = qt::random_angles(6, rng);
        const auto extraction = extract_b(client, spec, {}, 4);
        REQUIRE(extraction.report.references_used.size() == 1);

        const auto entries = service.audit_log();
        CHECK(entries.size() == 7);

        const auto from_file = read_request_log(log.path);
        REQUIRE(from_file.size() == entries.size());
        for (std::size_t e = 0; e < entries.size(); ++e) {
            CHECK(from_file[e].request_id == entries[e].request_id);
            CHECK(from_file[e].n == entries[e].n);
        }
    }

    SUBCASE("log entries expose only indices, angles and shots") {
        CloudService service(ServiceConfig{});
        service.start();
        HttpCloudClient client(service.base_url());
        client.run(make_request(2, 1, {0.1, 0.2, 0.3, 0.4}, InputStateSpec::superposition(0, 2)));

        const auto entries = service.audit_log();
        REQUIRE(entries.size() == 1);
        const json j = entries[0].to_json();
        const std::vector<std::string> allowed = {"ts",          "request_id", "n",
                                                  "thetas",      "input",      "input.type",
                                                  "input.i",     "input.r",    "shots"};
        for (const auto& path : collect_key_paths(j)) {
            CHECK(std::find(allowed.begin(), allowed.end(), path) != allowed.end());
        }
    }
}

TEST_CASE("request wire schema is closed over the allowlist") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 8; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        auto req = make_request(n, 1, qt::random_angles(static_cast<std::size_t>(2 * n), rng),
                                trial % 2 == 0
                                    ? InputStateSpec::basis(rng() % (std::uint64_t{1} << n))
                                    : InputStateSpec::superposition(0, 1),
                                trial % 3 == 0 ? std::optional<std::uint64_t>(100) : std::nullopt);
        req.observable.gates.push_back(Gate::ry(0, 0.5));
        req.observable.gates.push_back(Gate::cx(0, 1));
        req.observable.gates.push_back(Gate::x(1));

        const auto& allowed = run_request_key_allowlist();
        for (const auto& path : collect_key_paths(req.to_json())) {
            CHECK(std::find(allowed.begin(), allowed.end(), path) != allowed.end());
        }
    }
}

TEST_CASE("local client follows the same validation and logging path") {
    CloudService service(ServiceConfig{});
    LocalCloudClient client(service);

    const auto resp =
        client.run(make_request(2, 2, std::vector<double>(6, 0.0), InputStateSpec::basis(1)));
    CHECK(resp.probs[1] == doctest::Approx(1.0));
    CHECK(service.audit_log().size() == 1);

    auto bad = make_request(2, 2, std::vector<double>(5, 0.0), InputStateSpec::basis(0));
    CHECK_THROWS_AS(client.run(bad), ServiceError);
}

TEST_CASE("unreachable endpoints surface as transport errors") {
    CloudService probe(ServiceConfig{});
    probe.start();
    const int dead_port = probe.port();
    probe.stop();  // nothing listens there anymore

    HttpCloudClient client("http://127.0.0.1:" + std::to_string(dead_port));
    auto req = make_request(2, 2, std::vector<double>(6, 0.0), InputStateSpec::basis(0));
    CHECK_THROWS_AS(client.run(req), TransportError);
    CHECK_THROWS_AS(client.health(), TransportError);
}

TEST_CASE("binding a taken port fails loudly") {
    CloudService first(ServiceConfig{});
    first.start();
    ServiceConfig conflict;
    conflict.port = first.port();
    CloudService second(conflict);
    CHECK_THROWS_AS(second.start(), StartupError);
}
