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

#include <random>
#include <stdexcept>

#include <doctest.h>

#include "oracle.hpp"
#include "qveil/ansatz.hpp"
#include "qveil/run.hpp"

using namespace qveil;
namespace qt = qveil::testing;

namespace {

AnsatzSpec make_spec(int n, int reps, Entanglement ent, std::vector<double> thetas) {
    AnsatzSpec spec;
    spec.n = n;
    spec.reps = reps;
    spec.entanglement = ent;
    spec.thetas = std::move(thetas);
    return spec;
}

}  // namespace

TEST_CASE("zero-angle full ansatz composes to the identity") {
    const auto spec = make_spec(2, 2, Entanglement::Full, std::vector<double>(6, 0.0));
    const auto gates = build_real_amplitudes(spec);
    const auto u = qt::circuit_matrix(gates, 2);
    for (std::size_t row = 0; row < 4; ++row) {
        for (std::size_t col = 0; col < 4; ++col) {
            CHECK(u.at(row, col) == doctest::Approx(row == col ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("full entanglement emits every ordered pair") {
    const auto spec = make_spec(4, 2, Entanglement::Full, std::vector<double>(12, 0.0));
    const auto gates = build_real_amplitudes(spec);

    int ry = 0;
    int cx = 0;
    for (const Gate& g : gates) {
        if (g.kind == GateKind::RY) ++ry;
        if (g.kind == GateKind::CX) ++cx;
    }
    CHECK(ry == 12);       // 3 layers of 4
    CHECK(cx == 2 * 6);    // two layers of C(4,2)
    CHECK(spec.parameter_count() == 12);
}

TEST_CASE("linear entanglement layout") {
    const auto spec = make_spec(3, 1, Entanglement::Linear, std::vector<double>(6, 0.5));
    const auto gates = build_real_amplitudes(spec);

    REQUIRE(gates.size() == 8);
    for (int q = 0; q < 3; ++q) CHECK(gates[static_cast<std::size_t>(q)].kind == GateKind::RY);
    CHECK(gates[3].kind == GateKind::CX);
    CHECK(gates[3].control == 0);
    CHECK(gates[3].qubit == 1);
    CHECK(gates[4].control == 1);
    CHECK(gates[4].qubit == 2);
    for (int q = 0; q < 3; ++q) CHECK(gates[5 + static_cast<std::size_t>(q)].kind == GateKind::RY);
}

TEST_CASE("theta vector length is enforced") {
    auto spec = make_spec(3, 2, Entanglement::Full, std::vector<double>(8, 0.0));
    CHECK_THROWS_AS(build_real_amplitudes(spec), std::invalid_argument);
    spec.thetas.resize(9);
    CHECK_NOTHROW(build_real_amplitudes(spec));
    spec.reps = 0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("run_exact") {
    SUBCASE("identity circuit leaves the basis input alone") {
        const auto spec = make_spec(2, 2, Entanglement::Full, std::vector<double>(6, 0.0));
        const auto probs = run_exact(spec, {}, InputStateSpec::basis(0));
        CHECK(probs == ProbabilityVector{1, 0, 0, 0});
    }
    SUBCASE("zero-angle single-rep circuit permutes basis states") {
        const auto spec = make_spec(2, 1, Entanglement::Full, std::vector<double>(4, 0.0));
        const auto probs = run_exact(spec, {}, InputStateSpec::basis(3));
        int ones = 0;
        for (double p : probs) {
            if (p == doctest::Approx(1.0)) ++ones;
            CHECK((p == doctest::Approx(0.0) || p == doctest::Approx(1.0)));
        }
        CHECK(ones == 1);
    }
    SUBCASE("random circuit matches the dense unitary") {
        std::mt19937_64 rng(314159);
        const auto spec = make_spec(3, 2, Entanglement::Full, qt::random_angles(9, rng));
        const auto probs = run_exact(spec, {}, InputStateSpec::basis(5));

        const auto prep = prepare_input(InputStateSpec::basis(5), 3);
        auto u = qt::circuit_matrix(prep, 3);
        u = qt::matmul(qt::circuit_matrix(build_real_amplitudes(spec), 3), u);
        std::vector<double> e0(8, 0.0);
        e0[0] = 1.0;
        const auto amps = qt::matvec(u, e0);
        for (std::size_t m = 0; m < 8; ++m) {
            CHECK(probs[m] == doctest::Approx(amps[m] * amps[m]).epsilon(1e-10));
        }
    }
    SUBCASE("observable rotation is applied after the ansatz") {
        const auto spec = make_spec(1, 1, Entanglement::Full, std::vector<double>(2, 0.0));
        ObservableRotation obs;
        obs.gates.push_back(Gate::x(0));
        const auto probs = run_exact(spec, obs, InputStateSpec::basis(0));
        CHECK(probs[1] == doctest::Approx(1.0));
    }
    SUBCASE("input outside the register is a configuration error") {
        const auto spec = make_spec(2, 1, Entanglement::Full, std::vector<double>(4, 0.0));
        CHECK_THROWS_AS(run_exact(spec, {}, InputStateSpec::basis(4)), std::out_of_range);
        ObservableRotation obs;
        obs.gates.push_back(Gate::x(3));
        CHECK_THROWS_AS(run_exact(spec, obs, InputStateSpec::basis(0)), std::out_of_range);
    }
}

TEST_CASE("composite equivalence against the dense oracle across layouts") {
    std::mt19937_64 rng(777);
    for (int n = 2; n <= 5; ++n) {
        for (const auto ent : {Entanglement::Full, Entanglement::Linear}) {
            const auto spec =
                make_spec(n, 2, ent, qt::random_angles(static_cast<std::size_t>(3 * n), rng));
            const std::uint64_t input = rng() % (std::uint64_t{1} << n);
            const auto probs = run_exact(spec, {}, InputStateSpec::basis(input));

            std::vector<double> e_in(std::size_t{1} << n, 0.0);
            e_in[input] = 1.0;
            const auto amps =
                qt::matvec(qt::circuit_matrix(build_real_amplitudes(spec), n), e_in);
            for (std::size_t m = 0; m < probs.size(); ++m) {
                CHECK(probs[m] == doctest::Approx(amps[m] * amps[m]).epsilon(1e-10));
            }
        }
    }
}
