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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qveil/dataset.hpp"
#include "qveil/encoding.hpp"
#include "qveil/extraction.hpp"

namespace qveil {

// Forward pass of the extracted model: a = B (f/c), p_m = a_m^2, plus the
// per-qubit marginals. Everything here is plain linear algebra; no circuit
// runs happen once B is in hand.
struct ForwardResult {
    ProbabilityVector probs;
    std::vector<double> marginals;  // index k-1 holds g_k
};

ForwardResult forward(const BMatrix& b, const CoefficientVector& f);

double cost_mse(const std::vector<double>& marginals, const std::vector<double>& label);

// Cross entropy with natural log; marginals are clamped below at 1e-12
// before the log, so a zero marginal yields a large finite value.
double cost_ce(const std::vector<double>& marginals, const std::vector<double>& label);

enum class CostKind { MSE, CE };
enum class GradientMethod { ParameterShift, FiniteDifference };

double sample_cost(const BMatrix& b, const EncoderSpec& encoder, const LabeledSample& sample,
                   CostKind kind);

// Mean cost over the dataset against a fixed B. Throws on an empty dataset.
double batch_cost(const BMatrix& b, const LabeledDataset& dataset, const EncoderSpec& encoder,
                  CostKind kind);

struct TrainConfig {
    int epochs = 30;
    double learning_rate = 1.0;
    CostKind cost = CostKind::MSE;
    GradientMethod gradient_method = GradientMethod::FiniteDifference;
    double fd_step = 1e-4;
    std::optional<std::uint64_t> shots;
    std::uint64_t seed = 1;

    void validate() const;
};

// Everything a gradient evaluation needs to reach the cloud. The reference
// hint carries the previous extraction's first reference across the shifted
// evaluations of an epoch, skipping redundant scans.
struct ExtractionContext {
    CloudClient* client = nullptr;
    int n = 0;
    int reps = 1;
    Entanglement entanglement = Entanglement::Full;
    ObservableRotation observable;
    int d = 0;
    ExtractionOptions options;

    AnsatzSpec ansatz_for(const std::vector<double>& thetas) const;
    Extraction extract(const std::vector<double>& thetas);
};

// Batch-cost gradient with respect to the circuit angles. Each component
// costs two full extractions at shifted angles: ParameterShift evaluates at
// theta +- pi/2 and halves the difference, FiniteDifference at theta +- h
// over 2h. The pi/2 shift differentiates the marginals exactly but is only
// a heuristic direction for costs that are nonlinear in the probabilities;
// FiniteDifference is the correctness reference.
std::vector<double> gradient(const std::vector<double>& thetas, const LabeledDataset& dataset,
                             const EncoderSpec& encoder, const TrainConfig& config,
                             ExtractionContext& context);

struct TrainedModel {
    BMatrix b;
    std::vector<double> thetas;
    EncoderSpec encoder;
    std::vector<double> history;  // mean cost per epoch
    AnsatzSpec ansatz;
    ExtractionReport report;
    int num_classes = 0;

    nlohmann::json to_json() const;
    static TrainedModel from_json(const nlohmann::json& j);
};

void write_model_file(const std::string& path, const TrainedModel& model);
TrainedModel read_model_file(const std::string& path);

// Gradient-descent loop: per epoch, extract B at the current angles, record
// the mean cost, then step the angles against the gradient. The final epoch
// records its extraction without a trailing update so the stored (B, theta)
// pair is the one the history ends on. Angles start uniform over [0, 2pi),
// seeded. Throws on a non-finite cost, carrying the epoch and angles in the
// message.
TrainedModel train(const LabeledDataset& dataset, const EncoderSpec& encoder,
                   const TrainConfig& config, ExtractionContext& context);

struct Prediction {
    int predicted_class = 0;
    std::vector<double> marginals;
};

// Argmax over the first num_classes marginals; ties break to the smaller
// class index.
Prediction infer(const TrainedModel& model, std::span<const double> x);

double training_accuracy(const TrainedModel& model, const LabeledDataset& dataset);

}  // namespace qveil
