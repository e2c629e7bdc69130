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

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include <unistd.h>

#include <doctest.h>

#include "oracle.hpp"
#include "qveil/client.hpp"
#include "qveil/dataset.hpp"
#include "qveil/rng.hpp"
#include "qveil/service.hpp"
#include "qveil/trainer.hpp"

using namespace qveil;
namespace qt = qveil::testing;

namespace {

BMatrix identity_b(int n) {
    const int d = 1 << n;
    BMatrix b(n, d);
    for (int i = 0; i < d; ++i) b.at(static_cast<std::size_t>(i), i) = 1.0;
    return b;
}

ExtractionContext make_context(CloudClient& client, int n, int reps, int d) {
    ExtractionContext context;
    context.client = &client;
    context.n = n;
    context.reps = reps;
    context.entanglement = Entanglement::Full;
    context.d = d;
    return context;
}

}  // namespace

TEST_CASE("forward pass") {
    SUBCASE("identity matrix squares the coefficients") {
        CoefficientVector f;
        f.f = {0.6, 0.8, 0.0, 0.0};
        f.c = 1.0;
        const auto result = forward(identity_b(2), f);
        CHECK(result.probs[0] == doctest::Approx(0.36));
        CHECK(result.probs[1] == doctest::Approx(0.64));
        CHECK(result.probs[2] == doctest::Approx(0.0));
        CHECK(result.marginals[0] == doctest::Approx(0.0));   // g_1: high bit never set
        CHECK(result.marginals[1] == doctest::Approx(0.64));  // g_2
    }
    SUBCASE("a one-hot coefficient reads off a column") {
        CloudService service(ServiceConfig{});
        LocalCloudClient client(service);
        std::mt19937_64 rng(44);
        AnsatzSpec spec;
        spec.n = 2;
        spec.reps = 2;
        spec.entanglement = Entanglement::Full;
        spec.thetas = qt::random_angles(6, rng);
        const auto extraction = extract_b(client, spec, {}, 4);

        CoefficientVector f;
        f.f = {0.0, 0.0, 1.0, 0.0};
        f.c = 1.0;
        const auto result = forward(extraction.b, f);
        for (std::size_t m = 0; m < 4; ++m) {
            CHECK(result.probs[m] ==
                  doctest::Approx(extraction.b.at(m, 2) * extraction.b.at(m, 2)));
        }
    }
    SUBCASE("probabilities sum to one for exact-mode matrices") {
        CloudService service(ServiceConfig{});
        LocalCloudClient client(service);
        std::mt19937_64 rng(45);
        AnsatzSpec spec;
        spec.n = 3;
        spec.reps = 2;
        spec.entanglement = Entanglement::Full;
        spec.thetas = qt::random_angles(9, rng);
        const auto extraction = extract_b(client, spec, {}, 8);

        for (int trial = 0; trial < 5; ++trial) {
            std::vector<double> x(8);
            for (double& v : x) v = 2.0 * uniform_unit(rng) - 1.0;
            const auto result = forward(extraction.b, amplitude_encode(x));
            double total = 0.0;
            for (double p : result.probs) total += p;
            CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
        }
    }
    SUBCASE("dimension mismatch is a shape error") {
        CoefficientVector f;
        f.f = {1.0, 0.0};
        f.c = 1.0;
        CHECK_THROWS_AS(forward(identity_b(2), f), std::invalid_argument);
    }
}

TEST_CASE("cost functions") {
    SUBCASE("mse of a perfect fit is zero") {
        CHECK(cost_mse({0.3, 0.7}, {0.3, 0.7}) == doctest::Approx(0.0));
    }
    SUBCASE("mse worked example") {
        CHECK(cost_mse({0.6, 0.5}, {1.0, 0.0}) == doctest::Approx(0.205));
    }
    SUBCASE("mse matches an independent recomputation") {
        std::mt19937_64 rng(4);
        std::vector<double> g(5), lambda(5);
        for (std::size_t k = 0; k < 5; ++k) {
            g[k] = uniform_unit(rng);
            lambda[k] = uniform_unit(rng);
        }
        double want = 0.0;
        for (std::size_t k = 0; k < 5; ++k) want += (lambda[k] - g[k]) * (lambda[k] - g[k]);
        want /= 5.0;
        CHECK(cost_mse(g, lambda) == doctest::Approx(want).epsilon(1e-14));
    }
    SUBCASE("cross entropy worked example") {
        CHECK(cost_ce({0.5, 0.9}, {1.0, 0.0}) == doctest::Approx(-0.5 * std::log(0.5)));
    }
    SUBCASE("confident correct marginal contributes nothing") {
        CHECK(cost_ce({1.0, 0.2}, {1.0, 0.0}) == doctest::Approx(0.0));
    }
    SUBCASE("zero marginal is clamped, not singular") {
        const double v = cost_ce({0.0, 0.5}, {1.0, 0.0});
        CHECK(std::isfinite(v));
        CHECK(v == doctest::Approx(-0.5 * std::log(1e-12)));
    }
    SUBCASE("costs are non-negative") {
        CHECK(cost_mse({0.1, 0.9}, {1.0, 0.0}) >= 0.0);
        CHECK(cost_ce({0.1, 0.9}, {1.0, 0.0}) >= 0.0);
    }
}

TEST_CASE("batch cost") {
    const BMatrix b = identity_b(2);
    const EncoderSpec encoder{EncoderSpec::Kind::Amplitude, 0};

    LabeledDataset one;
    one.num_classes = 2;
    one.samples.push_back({{0.0, 1.0, 0.0, 0.0}, 1});

    SUBCASE("a single sample equals its own cost") {
        const double direct = sample_cost(b, encoder, one.samples[0], CostKind::MSE);
        CHECK(batch_cost(b, one, encoder, CostKind::MSE) == doctest::Approx(direct));
    }
    SUBCASE("duplicating a sample leaves the mean unchanged") {
        LabeledDataset many = one;
        for (int k = 0; k < 7; ++k) many.samples.push_back(one.samples[0]);
        CHECK(batch_cost(b, many, encoder, CostKind::MSE) ==
              doctest::Approx(batch_cost(b, one, encoder, CostKind::MSE)));
    }
    SUBCASE("mean over random samples matches the sum") {
        std::mt19937_64 rng(9);
        LabeledDataset data;
        data.num_classes = 2;
        for (int s = 0; s < 20; ++s) {
            std::vector<double> x(4);
            for (double& v : x) v = uniform_unit(rng) + 0.05;
            data.samples.push_back({x, static_cast<int>(rng() % 2)});
        }
        double total = 0.0;
        for (const auto& sample : data.samples) {
            total += sample_cost(b, encoder, sample, CostKind::CE);
        }
        CHECK(batch_cost(b, data, encoder, CostKind::CE) ==
              doctest::Approx(total / 20.0).epsilon(1e-12));
    }
    SUBCASE("empty dataset is rejected") {
        LabeledDataset empty;
        empty.num_classes = 2;
        CHECK_THROWS_AS(batch_cost(b, empty, encoder, CostKind::MSE), std::invalid_argument);
    }
}

TEST_CASE("gradients") {
    CloudService service(ServiceConfig{});
    LocalCloudClient client(service);
    const EncoderSpec encoder{EncoderSpec::Kind::Amplitude, 0};

    SUBCASE("finite differences agree across step sizes") {
        std::mt19937_64 rng(2026);
        LabeledDataset data;
        data.num_classes = 2;
        for (int s = 0; s < 8; ++s) {
            std::vector<double> x(4);
            for (double& v : x) v = 2.0 * uniform_unit(rng) - 1.0;
            data.samples.push_back({x, static_cast<int>(rng() % 2)});
        }
        const auto thetas = qt::random_angles(4, rng);

        TrainConfig config;
        config.cost = CostKind::MSE;
        config.gradient_method = GradientMethod::FiniteDifference;

        auto context = make_context(client, 2, 1, 4);
        config.fd_step = 1e-4;
        const auto coarse = gradient(thetas, data, encoder, config, context);
        config.fd_step = 1e-5;
        const auto fine = gradient(thetas, data, encoder, config, context);

        REQUIRE(coarse.size() == 4);
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(std::abs(coarse[j] - fine[j]) <=
                  1e-3 * std::max({std::abs(coarse[j]), std::abs(fine[j]), 1e-6}));
        }
    }

    SUBCASE("gradient vanishes at a perfect fit") {
        // At theta = 0 the circuit is the bare CX permutation; the sample
        // |01> is one of its fixed points and the label matches the
        // marginals exactly, so every cost direction is flat.
        LabeledDataset data;
        data.num_classes = 2;
        data.samples.push_back({{0.0, 1.0, 0.0, 0.0}, 1});

        TrainConfig config;
        config.cost = CostKind::MSE;
        config.gradient_method = GradientMethod::FiniteDifference;
        config.fd_step = 1e-4;

        auto context = make_context(client, 2, 1, 4);
        const std::vector<double> thetas(4, 0.0);
        const auto grad = gradient(thetas, data, encoder, config, context);
        double norm = 0.0;
        for (double gj : grad) norm += gj * gj;
        CHECK(std::sqrt(norm) <= 1e-8);
    }

    SUBCASE("parameter shift differentiates marginals exactly") {
        // Marginals are single-harmonic in each angle, so the half-turn
        // shift rule is exact for them; compare against a tight central
        // difference of the same marginal.
        std::mt19937_64 rng(303);
        const auto thetas = qt::random_angles(4, rng);
        auto context = make_context(client, 2, 1, 4);

        std::vector<double> x{0.8, -0.3, 0.4, 0.2};
        const CoefficientVector f = amplitude_encode(x);

        auto marginal_at = [&](const std::vector<double>& angles) {
            return forward(context.extract(angles).b, f).marginals[0];
        };

        for (std::size_t j = 0; j < thetas.size(); ++j) {
            auto shifted = thetas;
            shifted[j] = thetas[j] + 1.5707963267948966;
            const double up = marginal_at(shifted);
            shifted[j] = thetas[j] - 1.5707963267948966;
            const double down = marginal_at(shifted);
            const double ps = (up - down) / 2.0;

            shifted[j] = thetas[j] + 1e-5;
            const double up_fd = marginal_at(shifted);
            shifted[j] = thetas[j] - 1e-5;
            const double down_fd = marginal_at(shifted);
            const double fd = (up_fd - down_fd) / 2e-5;

            CHECK(ps == doctest::Approx(fd).epsilon(1e-6));
        }
    }

    SUBCASE("parameter shift is only a heuristic for the nonlinear costs") {
        // The squared-error cost carries second harmonics that the half-turn
        // shift rule annihilates; on a generic instance the two estimators
        // must visibly disagree while both finite-difference ladders agree.
        std::mt19937_64 rng(7204);
        LabeledDataset data;
        data.num_classes = 2;
        for (int s = 0; s < 8; ++s) {
            std::vector<double> x(4);
            for (double& v : x) v = 2.0 * uniform_unit(rng) - 1.0;
            data.samples.push_back({x, static_cast<int>(rng() % 2)});
        }
        const auto thetas = qt::random_angles(4, rng);

        TrainConfig config;
        config.cost = CostKind::MSE;
        auto context = make_context(client, 2, 1, 4);

        config.gradient_method = GradientMethod::ParameterShift;
        const auto ps = gradient(thetas, data, encoder, config, context);
        config.gradient_method = GradientMethod::FiniteDifference;
        config.fd_step = 1e-4;
        const auto fd = gradient(thetas, data, encoder, config, context);

        double max_gap = 0.0;
        for (std::size_t j = 0; j < 4; ++j) {
            max_gap = std::max(max_gap, std::abs(ps[j] - fd[j]));
        }
        CHECK(max_gap > 1e-3);
    }
}

TEST_CASE("training") {
    CloudService service(ServiceConfig{});
    LocalCloudClient client(service);
    const EncoderSpec encoder{EncoderSpec::Kind::Amplitude, 0};

    SUBCASE("zero learning rate freezes everything") {
        const LabeledDataset data = make_two_blob_dataset(4, 11);
        TrainConfig config;
        config.epochs = 3;
        config.learning_rate = 0.0;
        config.seed = 5;

        auto context = make_context(client, 2, 2, 2);
        const auto model = train(data, encoder, config, context);
        REQUIRE(model.history.size() == 3);
        CHECK(model.history[0] == doctest::Approx(model.history[1]));
        CHECK(model.history[1] == doctest::Approx(model.history[2]));
    }

    SUBCASE("identical configuration reproduces identical history") {
        const LabeledDataset data = make_two_blob_dataset(6, 13);
        TrainConfig config;
        config.epochs = 4;
        config.learning_rate = 0.5;
        config.seed = 21;

        auto context_a = make_context(client, 2, 2, 2);
        const auto a = train(data, encoder, config, context_a);
        auto context_b = make_context(client, 2, 2, 2);
        const auto b = train(data, encoder, config, context_b);
        CHECK(a.history == b.history);
        CHECK(a.thetas == b.thetas);
    }

    SUBCASE("a short run on separable blobs already descends") {
        const LabeledDataset data = make_two_blob_dataset(10, 17);
        TrainConfig config;
        config.epochs = 10;
        config.learning_rate = 0.75;
        config.seed = 3;

        auto context = make_context(client, 2, 2, 2);
        const auto model = train(data, encoder, config, context);
        REQUIRE(model.history.size() == 10);
        CHECK(model.history.back() < model.history.front());
    }

    SUBCASE("class count must fit the register") {
        LabeledDataset data;
        data.num_classes = 3;
        data.samples.push_back({{1.0, 0.0}, 2});
        TrainConfig config;
        auto context = make_context(client, 2, 2, 2);
        CHECK_THROWS_AS(train(data, encoder, config, context), std::invalid_argument);
    }
}

TEST_CASE("inference") {
    SUBCASE("identity model reads marginals off squared coefficients") {
        TrainedModel model;
        model.b = identity_b(2);
        model.encoder = {EncoderSpec::Kind::Amplitude, 0};
        model.num_classes = 2;

        const std::vector<double> x{0.0, 1.0, 0.0, 0.0};
        const auto pred = infer(model, x);
        CHECK(pred.predicted_class == 1);
        CHECK(pred.marginals[0] == doctest::Approx(0.0));
        CHECK(pred.marginals[1] == doctest::Approx(1.0));
    }

    SUBCASE("argmax ties break to the smaller class") {
        TrainedModel model;
        model.b = identity_b(2);
        model.encoder = {EncoderSpec::Kind::Amplitude, 0};
        model.num_classes = 2;
        // Equal weight on |01> and |10>: g_1 = g_2 = 0.5.
        const std::vector<double> x{0.0, 1.0, 1.0, 0.0};
        CHECK(infer(model, x).predicted_class == 0);
    }

    SUBCASE("classical inference equals quantum-simulated inference") {
        CloudService service(ServiceConfig{});
        LocalCloudClient client(service);
        const EncoderSpec encoder{EncoderSpec::Kind::Amplitude, 0};
        const LabeledDataset data = make_two_blob_dataset(6, 29);

        TrainConfig config;
        config.epochs = 3;
        config.learning_rate = 0.75;
        config.seed = 9;
        auto context = make_context(client, 2, 2, 2);
        const auto model = train(data, encoder, config, context);

        const auto gates = build_real_amplitudes(model.ansatz);
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> x{uniform_unit(rng) + 0.05, uniform_unit(rng) + 0.05};
            const auto pred = infer(model, x);

            StateVector state(2);
            state.amps.assign(4, 0.0);
            const auto coeff = amplitude_encode(x).normalized();
            state.amps[0] = coeff[0];
            state.amps[1] = coeff[1];
            apply_circuit(state, gates);
            const auto direct = all_marginals(state.probabilities());

            for (std::size_t k = 0; k < direct.size(); ++k) {
                CHECK(pred.marginals[k] == doctest::Approx(direct[k]).epsilon(1e-8));
            }
        }
    }

    SUBCASE("model files round-trip") {
        TrainedModel model;
        model.b = identity_b(2);
        model.thetas = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
        model.encoder = {EncoderSpec::Kind::Amplitude, 0};
        model.history = {0.4, 0.3, 0.2};
        model.num_classes = 2;
        model.ansatz.n = 2;
        model.ansatz.reps = 2;
        model.ansatz.entanglement = Entanglement::Full;
        model.ansatz.thetas = model.thetas;
        model.report.d = 4;
        model.report.runs_issued = 7;

        const std::string path =
            "/tmp/qveil_test_" + std::to_string(::getpid()) + "_model.json";
        write_model_file(path, model);
        const auto loaded = read_model_file(path);
        std::remove(path.c_str());

        CHECK(loaded.b.entries == model.b.entries);
        CHECK(loaded.thetas == model.thetas);
        CHECK(loaded.history == model.history);
        CHECK(loaded.num_classes == 2);
        CHECK(loaded.encoder.kind == EncoderSpec::Kind::Amplitude);
    }
}
