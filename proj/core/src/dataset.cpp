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

#include "qveil/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qveil/rng.hpp"

namespace qveil {

void LabeledDataset::validate() const {
    if (samples.empty()) throw std::invalid_argument("dataset is empty");
    const std::size_t dim = samples.front().x.size();
    if (dim == 0) throw std::invalid_argument("samples need at least one feature");
    for (const auto& s : samples) {
        if (s.x.size() != dim) throw std::invalid_argument("inconsistent feature dimensions");
        if (s.label < 0 || s.label >= num_classes) {
            throw std::invalid_argument("label " + std::to_string(s.label) +
                                        " outside [0, num_classes)");
        }
        for (double v : s.x) {
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite feature value");
        }
    }
}

std::vector<double> one_hot(int label, int n) {
    if (label < 0 || label >= n) throw std::invalid_argument("label out of range for one-hot");
    std::vector<double> lambda(static_cast<std::size_t>(n), 0.0);
    lambda[static_cast<std::size_t>(label)] = 1.0;
    return lambda;
}

LabeledDataset load_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open dataset " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("dataset " + path + " is empty");
    // Header row is required; its content is not interpreted.

    LabeledDataset dataset;
    int max_label = -1;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument("dataset " + path + " line " +
                                            std::to_string(line_no) + ": bad number '" + cell +
                                            "'");
            }
        }
        if (values.size() < 2) {
            throw std::invalid_argument("dataset " + path + " line " + std::to_string(line_no) +
                                        ": need at least one feature and a label");
        }
        const double raw_label = values.back();
        values.pop_back();
        const int label = static_cast<int>(raw_label);
        if (static_cast<double>(label) != raw_label || label < 0) {
            throw std::invalid_argument("dataset " + path + " line " + std::to_string(line_no) +
                                        ": label must be a non-negative integer");
        }
        max_label = std::max(max_label, label);
        dataset.samples.push_back({std::move(values), label});
    }
    dataset.num_classes = max_label + 1;
    dataset.validate();
    return dataset;
}

void save_dataset_csv(const std::string& path, const LabeledDataset& dataset) {
    dataset.validate();
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    const std::size_t dim = dataset.feature_dim();
    for (std::size_t j = 0; j < dim; ++j) out << "x" << j << ",";
    out << "label\n";
    char buf[32];
    for (const auto& s : dataset.samples) {
        for (double v : s.x) {
            std::snprintf(buf, sizeof(buf), "%.12g", v);
            out << buf << ",";
        }
        out << s.label << "\n";
    }
}

LabeledDataset make_two_blob_dataset(int per_class, std::uint64_t seed) {
    if (per_class < 1) throw std::invalid_argument("per_class must be >= 1");
    std::mt19937_64 rng(seed);

    // Box-Muller; kept out of std::normal_distribution so the draw sequence
    // is reproducible across standard libraries.
    auto gauss = [&rng]() {
        const double u1 = std::max(uniform_unit(rng), 1e-300);
        const double u2 = uniform_unit(rng);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };

    const double centers[2] = {0.35, 1.20};  // angles, well separated in [0, pi/2]
    const double spread = 0.10;

    LabeledDataset dataset;
    dataset.num_classes = 2;
    for (int c = 0; c < 2; ++c) {
        for (int s = 0; s < per_class; ++s) {
            const double angle = centers[c] + spread * gauss();
            const double radius = 1.0 + 0.2 * uniform_unit(rng);
            dataset.samples.push_back(
                {{radius * std::cos(angle), radius * std::sin(angle)}, c});
        }
    }
    return dataset;
}

}  // namespace qveil
