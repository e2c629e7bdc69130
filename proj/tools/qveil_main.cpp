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

#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "qveil/client.hpp"
#include "qveil/dataset.hpp"
#include "qveil/encoding.hpp"
#include "qveil/errors.hpp"
#include "qveil/extraction.hpp"
#include "qveil/rng.hpp"
#include "qveil/run.hpp"
#include "qveil/service.hpp"
#include "qveil/trainer.hpp"
#include "qveil/version.hpp"

namespace {

using namespace qveil;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.empty()) continue;
        out.push_back(std::stod(cell));
    }
    return out;
}

std::vector<double> random_thetas(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> thetas(count);
    for (double& t : thetas) t = uniform_angle(rng);
    return thetas;
}

std::atomic<bool> g_stop{false};

void handle_signal(int) { g_stop = true; }

struct CircuitFlags {
    int n = 2;
    int reps = 2;
    std::string entanglement = "full";

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", n, "Qubit count")->check(CLI::Range(1, 24));
        cmd->add_option("--reps", reps, "Ansatz repetitions")->check(CLI::PositiveNumber);
        cmd->add_option("--entanglement", entanglement, "Entanglement layout: full or linear")
            ->check(CLI::IsMember({"full", "linear"}));
    }

    AnsatzSpec ansatz(std::vector<double> thetas) const {
        AnsatzSpec spec;
        spec.n = n;
        spec.reps = reps;
        spec.entanglement = entanglement_from_string(entanglement);
        spec.thetas = std::move(thetas);
        spec.validate();
        return spec;
    }
};

// Local service + HTTP client pair for subcommands that can run without an
// external endpoint.
struct ClientHandle {
    std::unique_ptr<CloudService> service;
    std::unique_ptr<CloudClient> client;
};

ClientHandle make_client(const std::string& endpoint, int max_qubits,
                         std::optional<std::uint64_t> seed) {
    ClientHandle handle;
    if (!endpoint.empty()) {
        handle.client = std::make_unique<HttpCloudClient>(endpoint);
        return handle;
    }
    ServiceConfig config;
    config.max_qubits = max_qubits;
    config.rng_seed = seed;
    handle.service = std::make_unique<CloudService>(config);
    handle.service->start();
    handle.client = std::make_unique<HttpCloudClient>(handle.service->base_url());
    return handle;
}

int cmd_serve(const std::string& host, int port, int max_qubits,
              std::optional<std::uint64_t> seed, const std::string& log_path) {
    ServiceConfig config;
    config.host = host;
    config.port = port;
    config.max_qubits = max_qubits;
    config.rng_seed = seed;
    config.log_path = log_path;

    CloudService service(config);
    service.start();
    std::cout << "listening on " << service.base_url() << " (max_qubits=" << max_qubits << ")"
              << std::endl;

    std::signal(SIGINT, handle_signal);
    std::signal(SIGTERM, handle_signal);
    while (!g_stop) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    service.stop();
    std::cout << "shutdown after " << service.audit_log().size() << " requests" << std::endl;
    return 0;
}

int cmd_extract(const std::string& endpoint, const CircuitFlags& circuit,
                const std::string& thetas_csv, std::uint64_t theta_seed, int dim,
                int pad_to_qubits, int decoys, std::optional<std::uint64_t> shots,
                std::uint64_t seed, const std::string& out_path) {
    const int n = pad_to_qubits > 0 ? pad_to_qubits : circuit.n;
    const std::size_t param_count = static_cast<std::size_t>(n) * (circuit.reps + 1);

    std::vector<double> thetas = thetas_csv.empty() ? random_thetas(param_count, theta_seed)
                                                    : parse_double_list(thetas_csv);
    CircuitFlags effective = circuit;
    effective.n = n;
    const AnsatzSpec ansatz = effective.ansatz(std::move(thetas));

    const int d = dim > 0 ? dim : static_cast<int>(std::size_t{1} << n);

    ClientHandle handle = make_client(endpoint, std::max(n, 12), seed);

    ExtractionOptions options;
    options.shots = shots;
    options.seed = seed;

    Extraction extraction;
    if (decoys > 0) {
        DecoyExtraction decoy_result =
            extract_with_decoys(*handle.client, ansatz, {}, d, decoys, options);
        int total_runs = 0;
        for (const auto& run : decoy_result.runs) total_runs += run.report.runs_issued;
        DecoyRun& real = decoy_result.runs[static_cast<std::size_t>(decoy_result.real_index)];
        extraction.b = std::move(*real.b);
        extraction.report = real.report;
        std::cout << "parameter sets submitted: " << decoy_result.runs.size()
                  << " (real index " << decoy_result.real_index << ")" << std::endl;
        std::cout << "total runs across sets: " << total_runs << std::endl;
        AnsatzSpec real_ansatz = ansatz;
        real_ansatz.thetas = real.thetas;
        write_bmatrix_file(out_path, extraction.b, real_ansatz, extraction.report);
    } else if (pad_to_qubits > 0) {
        const PaddedPlan plan = pad_dimension(d, pad_to_qubits);
        extraction = extract_b(*handle.client, ansatz, {}, plan, options);
        write_bmatrix_file(out_path, extraction.b, ansatz, extraction.report);
    } else {
        extraction = extract_b(*handle.client, ansatz, {}, d, options);
        write_bmatrix_file(out_path, extraction.b, ansatz, extraction.report);
    }

    std::cout << "runs_issued: " << extraction.report.runs_issued << std::endl;
    std::cout << "references_used: " << extraction.report.references_used.size() << std::endl;
    std::cout << "wrote " << out_path << std::endl;
    return 0;
}

int cmd_train(const std::string& endpoint, const CircuitFlags& circuit,
              const std::string& data_path, const std::string& encoder_name, int epochs,
              double lr, const std::string& cost_name, const std::string& grad_name,
              double fd_step, std::optional<std::uint64_t> shots, std::uint64_t seed,
              const std::string& out_path) {
    const LabeledDataset dataset = load_dataset_csv(data_path);

    EncoderSpec encoder;
    if (encoder_name == "amplitude") {
        encoder = {EncoderSpec::Kind::Amplitude, 0};
    } else {
        encoder = {EncoderSpec::Kind::Qubit, circuit.n};
    }

    TrainConfig config;
    config.epochs = epochs;
    config.learning_rate = lr;
    config.cost = cost_name == "ce" ? CostKind::CE : CostKind::MSE;
    config.gradient_method =
        grad_name == "ps" ? GradientMethod::ParameterShift : GradientMethod::FiniteDifference;
    config.fd_step = fd_step;
    config.shots = shots;
    config.seed = seed;

    ClientHandle handle = make_client(endpoint, std::max(circuit.n, 12), seed);

    ExtractionContext context;
    context.client = handle.client.get();
    context.n = circuit.n;
    context.reps = circuit.reps;
    context.entanglement = entanglement_from_string(circuit.entanglement);
    context.d = static_cast<int>(encoder.output_dim(dataset.feature_dim()));
    context.options.shots = shots;
    context.options.seed = seed;

    const TrainedModel model = train(dataset, encoder, config, context);

    std::cout << "epoch,cost" << std::endl;
    for (std::size_t e = 0; e < model.history.size(); ++e) {
        std::cout << e << "," << fmt(model.history[e]) << std::endl;
    }
    std::cout << "training_accuracy: " << fmt(training_accuracy(model, dataset)) << std::endl;
    write_model_file(out_path, model);
    std::cout << "wrote " << out_path << std::endl;
    return 0;
}

int cmd_infer(const std::string& model_path, const std::string& features_csv,
              const std::string& data_path) {
    const TrainedModel model = read_model_file(model_path);

    if (!features_csv.empty()) {
        const std::vector<double> x = parse_double_list(features_csv);
        const Prediction pred = infer(model, x);
        std::cout << "class: " << pred.predicted_class << std::endl;
        std::cout << "marginals:";
        for (double g : pred.marginals) std::cout << " " << fmt(g);
        std::cout << std::endl;
        return 0;
    }

    const LabeledDataset dataset = load_dataset_csv(data_path);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < dataset.samples.size(); ++s) {
        const Prediction pred = infer(model, dataset.samples[s].x);
        std::cout << s << "," << pred.predicted_class << std::endl;
        if (pred.predicted_class == dataset.samples[s].label) ++hits;
    }
    std::cout << "accuracy: "
              << fmt(static_cast<double>(hits) / static_cast<double>(dataset.samples.size()))
              << std::endl;
    return 0;
}

int cmd_verify(const std::string& endpoint, const CircuitFlags& circuit, int dim, int num_x,
               std::uint64_t seed, double tolerance, std::optional<std::uint64_t> shots) {
    const AnsatzSpec ansatz =
        circuit.ansatz(random_thetas(static_cast<std::size_t>(circuit.n) * (circuit.reps + 1),
                                     seed));
    const int d = dim > 0 ? dim : static_cast<int>(std::size_t{1} << circuit.n);

    ClientHandle handle = make_client(endpoint, std::max(circuit.n, 12), seed);

    ExtractionOptions options;
    options.shots = shots;
    const Extraction extraction = extract_b(*handle.client, ansatz, {}, d, options);

    const auto body = build_real_amplitudes(ansatz);
    std::mt19937_64 rng(mix_seed(seed, 1));
    double max_dev = 0.0;
    for (int t = 0; t < num_x; ++t) {
        std::vector<double> x(static_cast<std::size_t>(d));
        for (double& v : x) v = 2.0 * uniform_unit(rng) - 1.0;
        const CoefficientVector f = amplitude_encode(x);

        const ForwardResult reconstructed = forward(extraction.b, f);

        StateVector state(circuit.n);
        state.amps.assign(state.dim(), 0.0);
        const std::vector<double> coeff = f.normalized();
        for (int i = 0; i < d; ++i) state.amps[static_cast<std::size_t>(i)] = coeff[static_cast<std::size_t>(i)];
        apply_circuit(state, body);
        const ProbabilityVector direct = state.probabilities();

        for (std::size_t m = 0; m < direct.size(); ++m) {
            max_dev = std::max(max_dev, std::abs(reconstructed.probs[m] - direct[m]));
        }
    }

    std::cout << "max_abs_probability_deviation: " << fmt(max_dev) << std::endl;
    std::cout << "runs_issued: " << extraction.report.runs_issued << std::endl;
    return max_dev <= tolerance ? 0 : 1;
}

int cmd_bench(const std::vector<int>& dims, const std::vector<long long>& samples) {
    if (dims.size() != samples.size()) {
        throw std::invalid_argument("--dim and --samples need the same number of values");
    }
    std::cout << "d,s,conventional_runs,protocol_runs" << std::endl;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        const long long protocol_runs = 2LL * dims[i] - 1;
        std::cout << dims[i] << "," << samples[i] << "," << samples[i] << "," << protocol_runs
                  << std::endl;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Probability-only circuit probing: train and run variational quantum "
                 "classifiers against an untrusted quantum cloud without uploading data"};
    app.set_version_flag("--version", QVEIL_VERSION);
    app.set_config("--config", "", "Read options from an INI/TOML file");
    app.require_subcommand(1);

    // serve
    auto* serve = app.add_subcommand("serve", "Run the quantum cloud service");
    std::string host = "127.0.0.1";
    int port = 8088;
    int max_qubits = 12;
    std::uint64_t seed = 1;
    bool seed_set = false;
    std::string log_path;
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Bind port");
    serve->add_option("--max-qubits", max_qubits, "Largest accepted register")
        ->check(CLI::Range(1, 24));
    serve->add_option("--seed", seed, "Shot-sampling seed")->each([&](const std::string&) {
        seed_set = true;
    });
    serve->add_option("--log", log_path, "Request log path (NDJSON)");

    // extract-b
    auto* extract = app.add_subcommand("extract-b", "Probe a circuit and assemble its B matrix");
    CircuitFlags extract_circuit;
    extract_circuit.attach(extract);
    std::string endpoint;
    std::string thetas_csv;
    std::uint64_t theta_seed = 7;
    int dim = 0;
    int pad_to_qubits = 0;
    int decoys = 0;
    std::uint64_t shots_value = 0;
    bool shots_set = false;
    std::string out_path = "b.json";
    extract->add_option("--endpoint", endpoint, "Cloud base URL (empty = in-process service)");
    extract->add_option("--thetas", thetas_csv, "Comma-separated circuit angles");
    extract->add_option("--theta-seed", theta_seed, "Seed for random angles when --thetas is absent");
    extract->add_option("--dim", dim, "Data dimension d (default 2^n)");
    extract->add_option("--pad-to-qubits", pad_to_qubits,
                        "Probe all basis vectors of this register size, keep --dim columns");
    extract->add_option("--decoys", decoys, "Extra decoy parameter sets to submit")
        ->check(CLI::NonNegativeNumber);
    extract->add_option("--shots", shots_value, "Sampled mode shot count (absent = exact)")
        ->each([&](const std::string&) { shots_set = true; });
    extract->add_option("--seed", seed, "Client-side seed (decoys, retries)");
    extract->add_option("--out", out_path, "Output B-matrix JSON path");

    // train
    auto* train_cmd = app.add_subcommand("train", "Train a classifier through the cloud");
    CircuitFlags train_circuit;
    train_circuit.attach(train_cmd);
    std::string data_path;
    std::string encoder_name = "amplitude";
    int epochs = 30;
    double lr = 0.75;
    std::string cost_name = "mse";
    std::string grad_name = "fd";
    double fd_step = 1e-4;
    std::string model_out = "model.json";
    train_cmd->add_option("--endpoint", endpoint, "Cloud base URL (empty = in-process service)");
    train_cmd->add_option("--data", data_path, "Training dataset CSV")->required();
    train_cmd->add_option("--encoder", encoder_name, "Feature map: amplitude or qubit")
        ->check(CLI::IsMember({"amplitude", "qubit"}));
    train_cmd->add_option("--epochs", epochs, "Training epochs")->check(CLI::PositiveNumber);
    train_cmd->add_option("--lr", lr, "Learning rate");
    train_cmd->add_option("--cost", cost_name, "Cost function: mse or ce")
        ->check(CLI::IsMember({"mse", "ce"}));
    train_cmd->add_option("--grad", grad_name, "Gradient estimator: ps or fd")
        ->check(CLI::IsMember({"ps", "fd"}));
    train_cmd->add_option("--fd-step", fd_step, "Finite-difference step");
    train_cmd->add_option("--shots", shots_value, "Sampled mode shot count (absent = exact)")
        ->each([&](const std::string&) { shots_set = true; });
    train_cmd->add_option("--seed", seed, "Angle initialization seed");
    train_cmd->add_option("--out", model_out, "Output model JSON path");

    // infer
    auto* infer_cmd = app.add_subcommand("infer", "Classify with a trained model, fully offline");
    std::string model_path;
    std::string features_csv;
    std::string infer_data;
    infer_cmd->add_option("--model", model_path, "Trained model JSON")->required();
    infer_cmd->add_option("--features", features_csv, "Comma-separated feature values");
    infer_cmd->add_option("--data", infer_data, "Dataset CSV to classify");

    // verify
    auto* verify = app.add_subcommand(
        "verify", "Compare reconstructed probabilities against direct simulation");
    CircuitFlags verify_circuit;
    verify_circuit.attach(verify);
    int num_x = 10;
    double tolerance = 1e-8;
    verify->add_option("--endpoint", endpoint, "Cloud base URL (empty = in-process service)");
    verify->add_option("--dim", dim, "Data dimension d (default 2^n)");
    verify->add_option("--xs", num_x, "Random inputs to compare")->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed, "Seed for angles and inputs");
    verify->add_option("--tol", tolerance, "Pass threshold on the max deviation");
    verify->add_option("--shots", shots_value, "Sampled mode shot count (absent = exact)")
        ->each([&](const std::string&) { shots_set = true; });

    // bench
    auto* bench = app.add_subcommand("bench", "Circuit-run counts: probe-once versus per-sample");
    std::vector<int> bench_dims;
    std::vector<long long> bench_samples;
    bench->add_option("--dim", bench_dims, "Data dimension d")->required();
    bench->add_option("--samples", bench_samples, "Dataset size s")->required();

    CLI11_PARSE(app, argc, argv);

    const std::optional<std::uint64_t> seed_opt = seed_set ? std::optional(seed) : std::nullopt;
    const std::optional<std::uint64_t> shots_opt =
        shots_set ? std::optional(shots_value) : std::nullopt;

    try {
        if (serve->parsed()) {
            return cmd_serve(host, port, max_qubits, seed_opt, log_path);
        }
        if (extract->parsed()) {
            return cmd_extract(endpoint, extract_circuit, thetas_csv, theta_seed, dim,
                               pad_to_qubits, decoys, shots_opt, seed, out_path);
        }
        if (train_cmd->parsed()) {
            return cmd_train(endpoint, train_circuit, data_path, encoder_name, epochs, lr,
                             cost_name, grad_name, fd_step, shots_opt, seed, model_out);
        }
        if (infer_cmd->parsed()) {
            if (features_csv.empty() && infer_data.empty()) {
                std::cerr << "infer needs --features or --data" << std::endl;
                return 1;
            }
            return cmd_infer(model_path, features_csv, infer_data);
        }
        if (verify->parsed()) {
            return cmd_verify(endpoint, verify_circuit, dim, num_x, seed, tolerance, shots_opt);
        }
        if (bench->parsed()) {
            return cmd_bench(bench_dims, bench_samples);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
