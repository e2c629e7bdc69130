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

#include "qveil/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include "qveil/errors.hpp"
#include "qveil/rng.hpp"

namespace qveil {

using nlohmann::json;

BMatrix::BMatrix(int n_qubits, int dim) : n(n_qubits), d(dim) {
    entries.assign((std::size_t{1} << n) * static_cast<std::size_t>(d), 0.0);
}

double BMatrix::column_norm(int i) const {
    double s = 0.0;
    for (std::size_t m = 0; m < rows(); ++m) s += at(m, i) * at(m, i);
    return std::sqrt(s);
}

SignTable::SignTable(int n_qubits, int dim) : n(n_qubits), d(dim) {
    sigma.assign((std::size_t{1} << n) * static_cast<std::size_t>(d), 1);
    anchor.assign(std::size_t{1} << n, std::nullopt);
}

double ExtractionOptions::eps_zero() const {
    if (!shots) return 1e-12;
    return std::max(1e-12, zero_coeff / static_cast<double>(*shots));
}

SignTolerances ExtractionOptions::tolerances() const {
    SignTolerances tol = SignTolerances::exact();
    tol.eps_zero = eps_zero();
    return tol;
}

json ExtractionReport::to_json() const {
    json j;
    j["runs_issued"] = runs_issued;
    j["references_used"] = references_used;
    j["zero_rows"] = zero_rows;
    j["eps_zero"] = eps_zero;
    j["shots"] = shots ? json(*shots) : json(nullptr);
    j["d"] = d;
    j["d_run"] = d_run;
    j["sign_retries"] = sign_retries;
    return j;
}

ExtractionReport ExtractionReport::from_json(const json& j) {
    ExtractionReport r;
    r.runs_issued = j.value("runs_issued", 0);
    r.references_used = j.value("references_used", std::vector<int>{});
    r.zero_rows = j.value("zero_rows", std::vector<int>{});
    r.eps_zero = j.value("eps_zero", 1e-12);
    if (j.contains("shots") && !j.at("shots").is_null()) r.shots = j.at("shots").get<std::uint64_t>();
    r.d = j.value("d", 0);
    r.d_run = j.value("d_run", r.d);
    r.sign_retries = j.value("sign_retries", 0);
    return r;
}

std::optional<int> choose_reference(const std::vector<ProbabilityVector>& basis_columns,
                                    const std::vector<bool>& used, double eps_zero) {
    std::optional<int> best;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < basis_columns.size(); ++i) {
        if (used[i]) continue;
        std::size_t count = 0;
        for (double p : basis_columns[i]) {
            if (p > eps_zero) ++count;
        }
        if (!best || count > best_count) {
            best = static_cast<int>(i);
            best_count = count;
        }
    }
    return best;
}

ExtractionState::ExtractionState(int n, int d, ExtractionOptions options)
    : n_(n),
      d_(d),
      dim_(std::size_t{1} << n),
      options_(std::move(options)),
      eps_(options_.eps_zero()),
      columns_(static_cast<std::size_t>(d)),
      have_column_(static_cast<std::size_t>(d), false),
      used_(static_cast<std::size_t>(d), false) {
    if (n < 1 || n > 24) throw std::invalid_argument("extraction qubit count out of range");
    if (d < 1 || static_cast<std::size_t>(d) > dim_) {
        throw std::invalid_argument("extraction dimension d must be in [1, 2^n]");
    }
}

void ExtractionState::set_basis_column(int i, ProbabilityVector probs) {
    if (i < 0 || i >= d_) throw std::out_of_range("basis column index out of range");
    if (probs.size() != dim_) {
        throw ProtocolError("basis column length " + std::to_string(probs.size()) +
                            " does not match 2^n");
    }
    columns_[static_cast<std::size_t>(i)] = std::move(probs);
    have_column_[static_cast<std::size_t>(i)] = true;
}

std::optional<int> ExtractionState::row_anchor(std::size_t m) const {
    for (int r : refs_) {
        if (columns_[static_cast<std::size_t>(r)][m] > eps_) return r;
    }
    return std::nullopt;
}

bool ExtractionState::anchored(std::size_t m) const { return row_anchor(m).has_value(); }

std::vector<int> ExtractionState::pending_rows() const {
    std::vector<int> pending;
    for (std::size_t m = 0; m < dim_; ++m) {
        bool has_support = false;
        for (int i = 0; i < d_; ++i) {
            if (columns_[static_cast<std::size_t>(i)][m] > eps_) {
                has_support = true;
                break;
            }
        }
        if (has_support && !anchored(m)) pending.push_back(static_cast<int>(m));
    }
    return pending;
}

std::vector<InputStateSpec> ExtractionState::next_round(std::optional<int> hint) {
    for (int i = 0; i < d_; ++i) {
        if (!have_column_[static_cast<std::size_t>(i)]) {
            throw std::logic_error("all basis columns must be ingested before scheduling rounds");
        }
    }
    if (d_ == 1) return {};
    // Exhaustion rule: at most d-1 of the d basis vectors ever serve as
    // references.
    if (static_cast<int>(refs_.size()) >= d_ - 1) return {};
    if (pending_rows().empty()) return {};

    std::optional<int> ref;
    if (refs_.empty() && hint && *hint >= 0 && *hint < d_ && !used_[static_cast<std::size_t>(*hint)]) {
        ref = *hint;
    } else {
        ref = choose_reference(columns_, used_, eps_);
    }
    if (!ref) return {};

    used_[static_cast<std::size_t>(*ref)] = true;
    refs_.push_back(*ref);

    std::vector<InputStateSpec> schedule;
    for (int i = 0; i < d_; ++i) {
        if (i == *ref || used_[static_cast<std::size_t>(i)]) continue;
        const std::uint64_t a = static_cast<std::uint64_t>(std::min(*ref, i));
        const std::uint64_t b = static_cast<std::uint64_t>(std::max(*ref, i));
        if (pairs_.count({a, b})) continue;
        schedule.push_back(InputStateSpec::superposition(static_cast<std::uint64_t>(*ref),
                                                         static_cast<std::uint64_t>(i)));
    }
    return schedule;
}

void ExtractionState::ingest_pair(std::uint64_t r, std::uint64_t i, const ProbabilityVector& probs,
                                  std::uint64_t shots_used) {
    if (probs.size() != dim_) {
        throw ProtocolError("superposition result length " + std::to_string(probs.size()) +
                            " does not match 2^n");
    }
    const std::pair<std::uint64_t, std::uint64_t> key{std::min(r, i), std::max(r, i)};
    auto it = pairs_.find(key);
    if (it == pairs_.end()) {
        pairs_[key] = {probs, shots_used};
        return;
    }
    // Re-measurement: pool the empirical distributions, weighted by shots.
    PairData& data = it->second;
    if (shots_used == 0 || data.shots == 0) {
        data = {probs, shots_used};
        return;
    }
    const double w_old = static_cast<double>(data.shots);
    const double w_new = static_cast<double>(shots_used);
    for (std::size_t m = 0; m < dim_; ++m) {
        data.probs[m] = (data.probs[m] * w_old + probs[m] * w_new) / (w_old + w_new);
    }
    data.shots += shots_used;
}

const ExtractionState::PairData* ExtractionState::find_pair(int a, int b) const {
    const std::pair<std::uint64_t, std::uint64_t> key{
        static_cast<std::uint64_t>(std::min(a, b)), static_cast<std::uint64_t>(std::max(a, b))};
    const auto it = pairs_.find(key);
    return it == pairs_.end() ? nullptr : &it->second;
}

std::vector<InputStateSpec> ExtractionState::unconfident_pairs() const {
    std::vector<InputStateSpec> out;
    if (!options_.shots) return out;
    for (std::size_t m = 0; m < dim_; ++m) {
        const auto anchor = row_anchor(m);
        if (!anchor) continue;
        const double p_r = columns_[static_cast<std::size_t>(*anchor)][m];
        for (int i = 0; i < d_; ++i) {
            if (i == *anchor) continue;
            const double p_i = columns_[static_cast<std::size_t>(i)][m];
            if (p_i <= eps_ || p_r <= eps_) continue;
            const PairData* pair = find_pair(*anchor, i);
            if (!pair || pair->shots == 0) continue;
            const double disc = 2.0 * pair->probs[m] - (p_r + p_i);
            if (std::abs(disc) <= sign_commit_margin(p_r, p_i, pair->shots)) {
                bool seen = false;
                for (const auto& s : out) {
                    if (s.r == static_cast<std::uint64_t>(std::min(*anchor, i)) &&
                        s.i == static_cast<std::uint64_t>(std::max(*anchor, i))) {
                        seen = true;
                        break;
                    }
                }
                if (!seen) {
                    out.push_back(InputStateSpec::superposition(
                        static_cast<std::uint64_t>(std::min(*anchor, i)),
                        static_cast<std::uint64_t>(std::max(*anchor, i))));
                }
            }
        }
    }
    return out;
}

std::vector<int> ExtractionState::zero_rows() const {
    std::vector<int> rows;
    if (refs_.empty()) return rows;
    for (int m : pending_rows()) rows.push_back(m);
    return rows;
}

std::pair<BMatrix, SignTable> ExtractionState::assemble() const {
    BMatrix b(n_, d_);
    SignTable signs(n_, d_);
    SignTolerances tol = options_.tolerances();

    for (std::size_t m = 0; m < dim_; ++m) {
        const auto anchor = row_anchor(m);
        signs.anchor[m] = anchor;
        for (int i = 0; i < d_; ++i) {
            const double p_i = columns_[static_cast<std::size_t>(i)][m];
            std::int8_t sigma = 1;
            if (anchor && i != *anchor && p_i > eps_) {
                const PairData* pair = find_pair(*anchor, i);
                if (!pair) {
                    throw ProtocolError("missing superposition result for pair (" +
                                        std::to_string(*anchor) + ", " + std::to_string(i) + ")");
                }
                const double p_r = columns_[static_cast<std::size_t>(*anchor)][m];
                if (pair->shots > 0) {
                    tol.delta_commit = sign_commit_margin(p_r, p_i, pair->shots);
                }
                sigma = static_cast<std::int8_t>(recover_sign(p_r, p_i, pair->probs[m], tol).sign());
            }
            signs.at(m, i) = sigma;
            b.at(m, i) = static_cast<double>(sigma) * std::sqrt(std::max(0.0, p_i));
        }
    }
    return {std::move(b), std::move(signs)};
}

namespace {

RunRequest make_request(const AnsatzSpec& ansatz, const ObservableRotation& observable,
                        const InputStateSpec& input, const std::optional<std::uint64_t>& shots) {
    RunRequest req;
    req.n = ansatz.n;
    req.ansatz = ansatz;
    req.observable = observable;
    req.input = input;
    req.shots = shots;
    return req;
}

}  // namespace

Extraction extract_b(CloudClient& client, const AnsatzSpec& ansatz,
                     const ObservableRotation& observable, int d,
                     const ExtractionOptions& options) {
    ansatz.validate();
    if (d < 1 || static_cast<std::size_t>(d) > (std::size_t{1} << ansatz.n)) {
        throw std::invalid_argument("extraction dimension d must be in [1, 2^n]");
    }

    ExtractionState state(ansatz.n, d, options);
    int runs = 0;
    int retries = 0;

    auto issue = [&](const InputStateSpec& input,
                     std::optional<std::uint64_t> shots) -> ProbabilityVector {
        RunResponse resp = client.run(make_request(ansatz, observable, input, shots));
        ++runs;
        return std::move(resp.probs);
    };

    for (int i = 0; i < d; ++i) {
        state.set_basis_column(i, issue(InputStateSpec::basis(static_cast<std::uint64_t>(i)),
                                        options.shots));
    }

    std::optional<int> hint = options.reference_hint;
    while (true) {
        const auto schedule = state.next_round(hint);
        hint.reset();
        if (schedule.empty()) break;
        for (const auto& input : schedule) {
            state.ingest_pair(input.r, input.i, issue(input, options.shots),
                              options.shots.value_or(0));
        }
    }

    if (options.shots) {
        // One re-measurement round for pairs whose interference margin is
        // inside the noise band, at four times the shot budget; decisions
        // commit after that regardless.
        const auto shaky = state.unconfident_pairs();
        for (const auto& input : shaky) {
            const std::uint64_t boosted = *options.shots * 4;
            state.ingest_pair(input.r, input.i, issue(input, boosted), boosted);
            ++retries;
        }
    }

    auto [b, signs] = state.assemble();

    Extraction result;
    result.report.runs_issued = runs;
    result.report.references_used = state.references_used();
    result.report.zero_rows = state.zero_rows();
    result.report.eps_zero = options.eps_zero();
    result.report.shots = options.shots;
    result.report.d = d;
    result.report.d_run = d;
    result.report.sign_retries = retries;
    result.b = std::move(b);
    result.signs = std::move(signs);
    return result;
}

PaddedPlan pad_dimension(int d_true, int n_padded) {
    if (n_padded < 1 || n_padded > 24) {
        throw std::invalid_argument("padded qubit count out of range");
    }
    const std::size_t dim = std::size_t{1} << n_padded;
    if (d_true < 1 || static_cast<std::size_t>(d_true) > dim) {
        throw std::invalid_argument("cannot pad dimension " + std::to_string(d_true) + " into " +
                                    std::to_string(n_padded) + " qubits");
    }
    return {n_padded, static_cast<int>(dim), d_true};
}

Extraction extract_b(CloudClient& client, const AnsatzSpec& ansatz,
                     const ObservableRotation& observable, const PaddedPlan& plan,
                     const ExtractionOptions& options) {
    if (ansatz.n != plan.n_padded) {
        throw std::invalid_argument("padded extraction needs an ansatz on " +
                                    std::to_string(plan.n_padded) + " qubits");
    }
    Extraction full = extract_b(client, ansatz, observable, plan.d_run, options);
    if (plan.d_keep == plan.d_run) return full;

    // Alice-side truncation; the cloud only ever saw the padded dimension.
    Extraction result;
    result.b = BMatrix(full.b.n, plan.d_keep);
    result.signs = SignTable(full.b.n, plan.d_keep);
    for (std::size_t m = 0; m < full.b.rows(); ++m) {
        for (int i = 0; i < plan.d_keep; ++i) {
            result.b.at(m, i) = full.b.at(m, i);
            result.signs.at(m, i) = full.signs.at(m, i);
        }
    }
    result.signs.anchor = full.signs.anchor;
    result.report = full.report;
    result.report.d = plan.d_keep;
    result.report.d_run = plan.d_run;
    return result;
}

DecoySchedule decoy_parameter_sets(const std::vector<double>& real_thetas, int k,
                                   std::uint64_t seed) {
    if (k < 0) throw std::invalid_argument("decoy count must be >= 0");
    std::mt19937_64 rng(seed);

    DecoySchedule schedule;
    schedule.theta_sets.reserve(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j < k; ++j) {
        std::vector<double> thetas(real_thetas.size());
        for (double& t : thetas) t = uniform_angle(rng);
        schedule.theta_sets.push_back(std::move(thetas));
    }
    const int real_index = k == 0 ? 0 : static_cast<int>(rng() % (static_cast<std::uint64_t>(k) + 1));
    schedule.theta_sets.insert(schedule.theta_sets.begin() + real_index, real_thetas);
    schedule.real_index = real_index;
    return schedule;
}

DecoyExtraction extract_with_decoys(CloudClient& client, const AnsatzSpec& ansatz,
                                    const ObservableRotation& observable, int d, int decoys,
                                    const ExtractionOptions& options) {
    const DecoySchedule schedule = decoy_parameter_sets(ansatz.thetas, decoys, options.seed);

    DecoyExtraction result;
    result.real_index = schedule.real_index;
    for (std::size_t j = 0; j < schedule.theta_sets.size(); ++j) {
        AnsatzSpec variant = ansatz;
        variant.thetas = schedule.theta_sets[j];
        Extraction extraction = extract_b(client, variant, observable, d, options);

        DecoyRun run;
        run.thetas = schedule.theta_sets[j];
        run.report = extraction.report;
        if (static_cast<int>(j) == schedule.real_index || options.keep_decoy_b) {
            run.b = std::move(extraction.b);
        }
        result.runs.push_back(std::move(run));
    }
    return result;
}

json ansatz_to_json(const AnsatzSpec& ansatz) {
    return json{{"n", ansatz.n},
                {"reps", ansatz.reps},
                {"entanglement", to_string(ansatz.entanglement)},
                {"thetas", ansatz.thetas}};
}

AnsatzSpec ansatz_from_json(const json& j) {
    AnsatzSpec a;
    a.n = j.at("n").get<int>();
    a.reps = j.at("reps").get<int>();
    a.entanglement = entanglement_from_string(j.at("entanglement").get<std::string>());
    a.thetas = j.at("thetas").get<std::vector<double>>();
    a.validate();
    return a;
}

json bmatrix_to_json(const BMatrix& b, const AnsatzSpec& ansatz, const ExtractionReport& report) {
    json rows = json::array();
    for (std::size_t m = 0; m < b.rows(); ++m) {
        json row = json::array();
        for (int i = 0; i < b.d; ++i) row.push_back(b.at(m, i));
        rows.push_back(std::move(row));
    }
    return json{{"n", b.n},
                {"d", b.d},
                {"entries", std::move(rows)},
                {"ansatz", ansatz_to_json(ansatz)},
                {"report", report.to_json()}};
}

BMatrixFile bmatrix_from_json(const json& j) {
    BMatrixFile file;
    file.b.n = j.at("n").get<int>();
    file.b.d = j.at("d").get<int>();
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != (std::size_t{1} << file.b.n)) {
        throw std::invalid_argument("entries must hold 2^n rows");
    }
    file.b.entries.reserve(rows.size() * static_cast<std::size_t>(file.b.d));
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(file.b.d)) {
            throw std::invalid_argument("every row must hold d entries");
        }
        for (const auto& v : row) file.b.entries.push_back(v.get<double>());
    }
    file.ansatz = ansatz_from_json(j.at("ansatz"));
    file.report = ExtractionReport::from_json(j.at("report"));
    return file;
}

void write_bmatrix_file(const std::string& path, const BMatrix& b, const AnsatzSpec& ansatz,
                        const ExtractionReport& report) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
    out << bmatrix_to_json(b, ansatz, report).dump(2) << "\n";
}

BMatrixFile read_bmatrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return bmatrix_from_json(j);
}

}  // namespace qveil
