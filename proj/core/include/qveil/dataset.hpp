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
#include <string>
#include <vector>

namespace qveil {

struct LabeledSample {
    std::vector<double> x;
    int label = 0;
};

struct LabeledDataset {
    std::vector<LabeledSample> samples;
    int num_classes = 0;

    std::size_t size() const { return samples.size(); }
    std::size_t feature_dim() const { return samples.empty() ? 0 : samples.front().x.size(); }

    // Throws std::invalid_argument on ragged features or labels outside
    // [0, num_classes).
    void validate() const;
};

// One-hot label over n marginals; class c activates entry c.
std::vector<double> one_hot(int label, int n);

// CSV with a required header row; feature columns first, integer class
// label last.
LabeledDataset load_dataset_csv(const std::string& path);
void save_dataset_csv(const std::string& path, const LabeledDataset& dataset);

// Two seeded Gaussian blobs of unit-circle directions, linearly separable
// by angle; the stock demo task for training runs.
LabeledDataset make_two_blob_dataset(int per_class, std::uint64_t seed);

}  // namespace qveil
