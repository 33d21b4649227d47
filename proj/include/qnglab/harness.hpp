// Copyright 2026 The QNGLab Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnglab/optimizers.hpp"

namespace qnglab {

/// Invalid experiment configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class ResultFormat : std::uint8_t { Csv, Json };

/**
 * @brief Everything needed to reproduce one benchmark run.
 *
 * JSON keys mirror the field names. `shots` is the string "analytic" or a
 * positive integer. The seed drives the circuit axes, the initial angles
 * and the shot sampling through separate streams.
 */
struct ExperimentConfig {
    std::size_t n_qubits = 7;
    std::size_t layers = 5;
    OptimizerKind optimizer = OptimizerKind::Qng;
    MetricMode metric_mode = MetricMode::BlockDiagonal;
    double eta = 0.01;
    std::optional<std::size_t> shots; ///< empty = analytic
    std::uint64_t seed = 0;
    std::size_t max_iters = 200;
    LossConvention loss_convention = LossConvention::Plain;
    Regularization regularization;
    AdamParams adam;
    std::string output;
    ResultFormat format = ResultFormat::Csv;
    bool record_wall_time = true;
    std::size_t workers = 1;

    /// Throws ConfigError.
    void validate() const;
    [[nodiscard]] ShotBudget budget() const;
    [[nodiscard]] OptimizerConfig optimizer_config() const;
    /// "gd", "adam", "qng-block", "natural-adam-diag", ...
    [[nodiscard]] std::string optimizer_label() const;

    [[nodiscard]] static ExperimentConfig from_json(const nlohmann::json &doc);
    [[nodiscard]] nlohmann::json to_json() const;
};

[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path &path);

/// Applies an optimizer label such as "qng-diag" to a config.
void apply_optimizer_label(ExperimentConfig &config, const std::string &label);

/// One run: identifying metadata plus its per-iteration records.
struct Trace {
    std::string run_id;
    std::string optimizer;
    std::string metric_mode; ///< "none" for gd/adam
    std::size_t n_qubits = 0;
    std::size_t layers = 0;
    double eta = 0.0;
    std::string shots;
    std::uint64_t seed = 0;
    std::vector<RunRecord> records;
};

/// Initial angles, uniform on [0, 2pi) from the seed.
[[nodiscard]] std::vector<double> initial_parameters(std::size_t d, std::uint64_t seed);

[[nodiscard]] Trace run_experiment(const ExperimentConfig &config);

/// Runs each optimizer label on the same circuit, initialization and seed.
[[nodiscard]] std::map<std::string, Trace> compare_optimizers(const ExperimentConfig &base,
                                                              std::span<const std::string> labels);

/// First iteration whose energy is at or below `target`.
[[nodiscard]] std::optional<std::size_t> iterations_to_reach(const Trace &trace, double target);

struct ImaginaryTimeReference {
    std::vector<double> taus;
    std::vector<StateVector> states;
    double dtau = 0.0;
};

/// Normalized exp(-H tau) psi0 on tau = 0, dtau, ..., <= tau_max, from a
/// dense eigendecomposition of H (at most 10 qubits).
[[nodiscard]] ImaginaryTimeReference imaginary_time_reference(const Eigen::MatrixXcd &hamiltonian,
                                                              const StateVector &psi0,
                                                              double tau_max, double dtau);
[[nodiscard]] ImaginaryTimeReference imaginary_time_reference(std::span<const PauliWord> hamiltonian,
                                                              const StateVector &psi0,
                                                              double tau_max, double dtau);

// ---------------------------------------------------------------------------
// Result files
// ---------------------------------------------------------------------------

/// Column order of the CSV output.
inline constexpr const char *kResultColumns[] = {
    "run_id", "optimizer", "metric_mode", "n",          "L",           "eta",       "shots",
    "seed",   "iter",      "loss",        "energy",     "grad_norm",   "qevals_cum", "wall_ms"};

[[nodiscard]] std::string format_csv(std::span<const Trace> traces);
[[nodiscard]] std::string format_json(std::span<const Trace> traces);
[[nodiscard]] std::vector<Trace> parse_csv(const std::string &text);
[[nodiscard]] std::vector<Trace> parse_json(const std::string &text);

/// Writes the traces; I/O failures throw std::runtime_error naming the path.
void emit_results(std::span<const Trace> traces, const std::filesystem::path &path,
                  ResultFormat format);

} // namespace qnglab
