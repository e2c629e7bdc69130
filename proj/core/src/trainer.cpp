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

#include "qveil/trainer.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qveil/rng.hpp"

namespace qveil {

using nlohmann::json;

namespace {

constexpr double kLogClamp = 1e-12;

CoefficientVector encode_for(const BMatrix& b, const EncoderSpec& encoder,
                             std::span<const double> x) {
    CoefficientVector f = encoder.encode(x);
    if (f.size() < static_cast<std::size_t>(b.d)) {
        f = pad_features(std::move(f), static_cast<std::size_t>(b.d));
    }
    return f;
}

}  // namespace

ForwardResult forward(const BMatrix& b, const CoefficientVector& f) {
    if (f.size() != static_cast<std::size_t>(b.d)) {
        throw std::invalid_argument("coefficient length " + std::to_string(f.size()) +
                                    " does not match model dimension " + std::to_string(b.d));
    }
    const std::vector<double> coeff = f.normalized();

    ForwardResult result;
    result.probs.assign(b.rows(), 0.0);
    for (std::size_t m = 0; m < b.rows(); ++m) {
        double a = 0.0;
        for (int i = 0; i < b.d; ++i) a += b.at(m, i) * coeff[static_cast<std::size_t>(i)];
        result.probs[m] = a * a;
    }
    result.marginals = all_marginals(result.probs);
    return result;
}

double cost_mse(const std::vector<double>& marginals, const std::vector<double>& label) {
    if (marginals.size() != label.size()) {
        throw std::invalid_argument("marginals and label lengths differ");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < marginals.size(); ++k) {
        const double diff = label[k] - marginals[k];
        acc += diff * diff;
    }
    return acc / static_cast<double>(marginals.size());
}

double cost_ce(const std::vector<double>& marginals, const std::vector<double>& label) {
    if (marginals.size() != label.size()) {
        throw std::invalid_argument("marginals and label lengths differ");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < marginals.size(); ++k) {
        acc -= label[k] * std::log(std::max(marginals[k], kLogClamp));
    }
    return acc / static_cast<double>(marginals.size());
}

double sample_cost(const BMatrix& b, const EncoderSpec& encoder, const LabeledSample& sample,
                   CostKind kind) {
    const ForwardResult fwd = forward(b, encode_for(b, encoder, sample.x));
    const std::vector<double> label = one_hot(sample.label, b.n);
    return kind == CostKind::MSE ? cost_mse(fwd.marginals, label)
                                 : cost_ce(fwd.marginals, label);
}

double batch_cost(const BMatrix& b, const LabeledDataset& dataset, const EncoderSpec& encoder,
                  CostKind kind) {
    if (dataset.samples.empty()) throw std::invalid_argument("dataset is empty");
    double acc = 0.0;
    for (const auto& sample : dataset.samples) acc += sample_cost(b, encoder, sample, kind);
    return acc / static_cast<double>(dataset.samples.size());
}

void TrainConfig::validate() const {
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (learning_rate < 0.0) throw std::invalid_argument("learning rate must be >= 0");
    if (gradient_method == GradientMethod::FiniteDifference && fd_step <= 0.0) {
        throw std::invalid_argument("finite-difference step must be > 0");
    }
}

AnsatzSpec ExtractionContext::ansatz_for(const std::vector<double>& thetas) const {
    AnsatzSpec spec;
    spec.n = n;
    spec.reps = reps;
    spec.entanglement = entanglement;
    spec.thetas = thetas;
    spec.validate();
    return spec;
}

Extraction ExtractionContext::extract(const std::vector<double>& thetas) {
    if (client == nullptr) throw std::invalid_argument("extraction context has no client");
    Extraction result = extract_b(*client, ansatz_for(thetas), observable, d, options);
    if (!result.report.references_used.empty()) {
        options.reference_hint = result.report.references_used.front();
    }
    return result;
}

std::vector<double> gradient(const std::vector<double>& thetas, const LabeledDataset& dataset,
                             const EncoderSpec& encoder, const TrainConfig& config,
                             ExtractionContext& context) {
    const double shift = config.gradient_method == GradientMethod::ParameterShift
                             ? std::numbers::pi / 2.0
                             : config.fd_step;
    const double denom = config.gradient_method == GradientMethod::ParameterShift
                             ? 2.0
                             : 2.0 * config.fd_step;

    std::vector<double> grad(thetas.size(), 0.0);
    std::vector<double> shifted = thetas;
    for (std::size_t j = 0; j < thetas.size(); ++j) {
        shifted[j] = thetas[j] + shift;
        const double up = batch_cost(context.extract(shifted).b, dataset, encoder, config.cost);
        shifted[j] = thetas[j] - shift;
        const double down = batch_cost(context.extract(shifted).b, dataset, encoder, config.cost);
        shifted[j] = thetas[j];
        grad[j] = (up - down) / denom;
    }
    return grad;
}

TrainedModel train(const LabeledDataset& dataset, const EncoderSpec& encoder,
                   const TrainConfig& config, ExtractionContext& context) {
    dataset.validate();
    config.validate();
    if (dataset.num_classes > context.n) {
        throw std::invalid_argument("num_classes exceeds the qubit count");
    }

    std::mt19937_64 rng(config.seed);
    std::vector<double> thetas(static_cast<std::size_t>(context.n * (context.reps + 1)));
    for (double& t : thetas) t = uniform_angle(rng);

    TrainedModel model;
    model.encoder = encoder;
    model.num_classes = dataset.num_classes;

    Extraction current;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        current = context.extract(thetas);
        const double cost = batch_cost(current.b, dataset, encoder, config.cost);
        if (!std::isfinite(cost)) {
            std::ostringstream dump;
            dump << "non-finite cost at epoch " << epoch << "; thetas:";
            for (double t : thetas) dump << " " << t;
            throw std::runtime_error(dump.str());
        }
        model.history.push_back(cost);

        const bool last_epoch = epoch + 1 == config.epochs;
        if (last_epoch) break;

        const std::vector<double> grad = gradient(thetas, dataset, encoder, config, context);
        for (std::size_t j = 0; j < thetas.size(); ++j) {
            thetas[j] -= config.learning_rate * grad[j];
        }
    }

    model.b = std::move(current.b);
    model.report = std::move(current.report);
    model.thetas = thetas;
    model.ansatz = context.ansatz_for(thetas);
    return model;
}

json TrainedModel::to_json() const {
    json j = bmatrix_to_json(b, ansatz, report);
    j["thetas"] = thetas;
    j["encoder"] = encoder.to_json();
    j["history"] = history;
    j["num_classes"] = num_classes;
    return j;
}

TrainedModel TrainedModel::from_json(const json& j) {
    TrainedModel model;
    BMatrixFile file = bmatrix_from_json(j);
    model.b = std::move(file.b);
    model.ansatz = std::move(file.ansatz);
    model.report = std::move(file.report);
    model.thetas = j.at("thetas").get<std::vector<double>>();
    model.encoder = EncoderSpec::from_json(j.at("encoder"));
    model.history = j.at("history").get<std::vector<double>>();
    model.num_classes = j.at("num_classes").get<int>();
    return model;
}

void write_model_file(const std::string& path, const TrainedModel& model) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << model.to_json().dump(2) << "\n";
}

TrainedModel read_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return TrainedModel::from_json(j);
}

Prediction infer(const TrainedModel& model, std::span<const double> x) {
    const ForwardResult fwd = forward(model.b, encode_for(model.b, model.encoder, x));

    Prediction pred;
    pred.marginals = fwd.marginals;
    const int classes = std::max(1, model.num_classes);
    int best = 0;
    for (int c = 1; c < classes && c < static_cast<int>(fwd.marginals.size()); ++c) {
        if (fwd.marginals[static_cast<std::size_t>(c)] >
            fwd.marginals[static_cast<std::size_t>(best)]) {
            best = c;
        }
    }
    pred.predicted_class = best;
    return pred;
}

double training_accuracy(const TrainedModel& model, const LabeledDataset& dataset) {
    if (dataset.samples.empty()) throw std::invalid_argument("dataset is empty");
    std::size_t hits = 0;
    for (const auto& sample : dataset.samples) {
        if (infer(model, sample.x).predicted_class == sample.label) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(dataset.samples.size());
}

}  // namespace qveil
