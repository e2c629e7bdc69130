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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qveil/ansatz.hpp"
#include "qveil/client.hpp"
#include "qveil/prepare.hpp"
#include "qveil/signs.hpp"
#include "qveil/simulator.hpp"

namespace qveil {

// Signed amplitude matrix reconstructed from probability-only runs: column
// i holds the output amplitudes of the circuit fed basis state i. Each row
// is determined only up to a global sign, so every consumer must be (and
// is) invariant under per-row sign flips. Columns of an exact-mode matrix
// have unit norm.
struct BMatrix {
    int n = 0;
    int d = 0;
    std::vector<double> entries;  // row-major, 2^n rows by d columns

    BMatrix() = default;
    BMatrix(int n_qubits, int dim);

    std::size_t rows() const { return std::size_t{1} << n; }

    double at(std::size_t m, int i) const {
        return entries[m * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)];
    }
    double& at(std::size_t m, int i) {
        return entries[m * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)];
    }

    double column_norm(int i) const;
};

// Per-entry relative signs and the reference that anchored each row.
// sigma is +1 on the anchoring reference column by convention (the
// unknowable global factor of the row is absorbed there). Rows with no
// anchor keep +1 everywhere; by the time references are exhausted such a
// row can have at most one surviving entry, whose sign squares away.
struct SignTable {
    int n = 0;
    int d = 0;
    std::vector<std::int8_t> sigma;             // row-major, +1 / -1
    std::vector<std::optional<int>> anchor;      // per row; nullopt = unresolved-zero

    SignTable() = default;
    SignTable(int n_qubits, int dim);

    std::int8_t at(std::size_t m, int i) const {
        return sigma[m * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)];
    }
    std::int8_t& at(std::size_t m, int i) {
        return sigma[m * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)];
    }
};

struct ExtractionOptions {
    std::optional<std::uint64_t> shots;  // absent = exact mode
    double zero_coeff = 10.0;            // shot-mode zero threshold = zero_coeff / shots
    std::optional<int> reference_hint;   // first reference to try, bypassing the scan
    bool keep_decoy_b = false;
    std::uint64_t seed = 1;              // decoy angle generation

    double eps_zero() const;
    SignTolerances tolerances() const;
};

struct ExtractionReport {
    int runs_issued = 0;
    std::vector<int> references_used;
    std::vector<int> zero_rows;
    double eps_zero = 1e-12;
    std::optional<std::uint64_t> shots;
    int d = 0;      // columns the caller keeps
    int d_run = 0;  // columns actually probed (> d when padded)
    int sign_retries = 0;

    nlohmann::json to_json() const;
    static ExtractionReport from_json(const nlohmann::json& j);
};

struct Extraction {
    BMatrix b;
    SignTable signs;
    ExtractionReport report;
};

// Unused basis index whose column has the most entries above eps_zero;
// ties break to the smallest index. nullopt once every index is used.
std::optional<int> choose_reference(const std::vector<ProbabilityVector>& basis_columns,
                                    const std::vector<bool>& used, double eps_zero);

// Adaptive schedule of the reference/superposition rounds, separated from
// transport so the decision logic is testable on raw probability columns.
//
// Usage: construct, set_basis_column for every i, then alternate
// next_round() / ingest_pair() until next_round() returns empty, then
// assemble(). Rows are keyed by content, not arrival order, so pair
// results may be ingested in any order within a round.
class ExtractionState {
  public:
    ExtractionState(int n, int d, ExtractionOptions options);

    void set_basis_column(int i, ProbabilityVector probs);

    // Starts the next reference round: marks a reference as used and
    // returns the superposition inputs to run (every index not yet used as
    // a reference and not yet paired with it). Empty when the extraction
    // is complete: either every row that has any support is anchored, or
    // d-1 references are exhausted.
    std::vector<InputStateSpec> next_round(std::optional<int> hint = std::nullopt);

    void ingest_pair(std::uint64_t r, std::uint64_t i, const ProbabilityVector& probs,
                     std::uint64_t shots_used = 0);

    // Rows with support but no anchoring reference yet.
    std::vector<int> pending_rows() const;

    // Superposition inputs whose sign decisions are inside the shot-mode
    // commit margin; candidates for one re-measurement.
    std::vector<InputStateSpec> unconfident_pairs() const;

    const std::vector<int>& references_used() const { return refs_; }

    std::pair<BMatrix, SignTable> assemble() const;
    std::vector<int> zero_rows() const;

  private:
    struct PairData {
        ProbabilityVector probs;
        std::uint64_t shots = 0;
    };

    bool anchored(std::size_t m) const;
    std::optional<int> row_anchor(std::size_t m) const;
    const PairData* find_pair(int a, int b) const;

    int n_;
    int d_;
    std::size_t dim_;
    ExtractionOptions options_;
    double eps_;
    std::vector<ProbabilityVector> columns_;
    std::vector<bool> have_column_;
    std::vector<bool> used_;
    std::vector<int> refs_;
    std::map<std::pair<std::uint64_t, std::uint64_t>, PairData> pairs_;
};

// Runs the full probe-and-assemble flow against a cloud endpoint:
// d basis runs, then reference rounds of superposition runs with sign
// recovery and zero-reference fallback. Exact-mode results satisfy
// |B f|^2 = direct-run probabilities for every unit-norm f.
Extraction extract_b(CloudClient& client, const AnsatzSpec& ansatz,
                     const ObservableRotation& observable, int d,
                     const ExtractionOptions& options = {});

// Dimension-hiding plan: probe all 2^n_padded basis vectors and keep only
// the first d_true columns. Throws std::invalid_argument when 2^n_padded
// cannot hold d_true.
struct PaddedPlan {
    int n_padded = 0;
    int d_run = 0;
    int d_keep = 0;
};

PaddedPlan pad_dimension(int d_true, int n_padded);

// extract_b over the padded plan; the ansatz must act on plan.n_padded
// qubits. The run count seen by the cloud depends only on n_padded.
Extraction extract_b(CloudClient& client, const AnsatzSpec& ansatz,
                     const ObservableRotation& observable, const PaddedPlan& plan,
                     const ExtractionOptions& options = {});

// Parameter-hiding schedule: k decoy theta vectors drawn uniformly over
// [0, 2pi), with the real vector shuffled in at a seeded position.
struct DecoySchedule {
    std::vector<std::vector<double>> theta_sets;
    int real_index = 0;
};

DecoySchedule decoy_parameter_sets(const std::vector<double>& real_thetas, int k,
                                   std::uint64_t seed);

struct DecoyRun {
    std::vector<double> thetas;
    ExtractionReport report;
    std::optional<BMatrix> b;  // decoy matrices are dropped unless keep_decoy_b
};

struct DecoyExtraction {
    std::vector<DecoyRun> runs;
    int real_index = 0;
};

DecoyExtraction extract_with_decoys(CloudClient& client, const AnsatzSpec& ansatz,
                                    const ObservableRotation& observable, int d, int decoys,
                                    const ExtractionOptions& options = {});

// Trained-model artifact file: the matrix plus the ansatz and report that
// produced it.
nlohmann::json ansatz_to_json(const AnsatzSpec& ansatz);
AnsatzSpec ansatz_from_json(const nlohmann::json& j);

nlohmann::json bmatrix_to_json(const BMatrix& b, const AnsatzSpec& ansatz,
                               const ExtractionReport& report);

struct BMatrixFile {
    BMatrix b;
    AnsatzSpec ansatz;
    ExtractionReport report;
};

BMatrixFile bmatrix_from_json(const nlohmann::json& j);
void write_bmatrix_file(const std::string& path, const BMatrix& b, const AnsatzSpec& ansatz,
                        const ExtractionReport& report);
BMatrixFile read_bmatrix_file(const std::string& path);

}  // namespace qveil
