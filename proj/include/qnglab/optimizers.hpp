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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnglab/geometry.hpp"
#include "qnglab/gradients.hpp"
#include "qnglab/statevector.hpp"

namespace qnglab {

/// Raised when an iteration produces a non-finite value or a solve fails.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class OptimizerKind : std::uint8_t { GradientDescent, Adam, Qng, NaturalAdam };

[[nodiscard]] std::string to_string(OptimizerKind kind);
[[nodiscard]] OptimizerKind optimizer_kind_from_string(const std::string &text);
[[nodiscard]] constexpr bool uses_metric(OptimizerKind kind) noexcept {
    return kind == OptimizerKind::Qng || kind == OptimizerKind::NaturalAdam;
}

struct Regularization {
    enum class Kind : std::uint8_t { PseudoInverse, Tikhonov };

    Kind kind = Kind::PseudoInverse;
    /// Relative eigenvalue cutoff for PseudoInverse, lambda for Tikhonov.
    double value = 1e-10;

    [[nodiscard]] static Regularization pseudo_inverse(double cutoff = 1e-10) {
        return {Kind::PseudoInverse, cutoff};
    }
    [[nodiscard]] static Regularization tikhonov(double lambda) { return {Kind::Tikhonov, lambda}; }
};

struct AdamParams {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::Qng;
    double eta = 0.01;
    MetricMode metric_mode = MetricMode::BlockDiagonal;
    Regularization regularization;
    AdamParams adam;

    /// Throws std::invalid_argument.
    void validate() const;
};

struct OptimizerState {
    std::vector<double> params;
    std::size_t iteration = 0;
    std::vector<double> first_moment;
    std::vector<double> second_moment;

    [[nodiscard]] static OptimizerState initial(std::vector<double> params);
};

struct SolverDiagnostics {
    std::size_t rank = 0;
    double min_retained = 0.0;
    double max_retained = 0.0;
};

struct StepResult {
    std::vector<double> new_params;
    std::vector<double> update;
    std::optional<SolverDiagnostics> diagnostics;
};

struct SolveResult {
    std::vector<double> x;
    SolverDiagnostics diagnostics;
};

/**
 * Solves g x = rhs blockwise.
 *
 * Pseudo-inverse: each block is eigendecomposed and eigenvalues above
 * cutoff * max(1, lambda_max) are inverted, the rest dropped, giving the
 * minimal-norm least-squares solution. Tikhonov: (g + lambda I) x = rhs.
 * Rejects asymmetric metrics and non-finite right-hand sides.
 */
[[nodiscard]] SolveResult metric_solve(const MetricTensor &metric, std::span<const double> rhs,
                                       const Regularization &regularization);

// The step functions advance `state` in place and report what they did.

StepResult gd_step(OptimizerState &state, std::span<const double> grad, double eta);

StepResult qng_step(OptimizerState &state, std::span<const double> grad,
                    const MetricTensor &metric, const OptimizerConfig &config);

StepResult adam_step(OptimizerState &state, std::span<const double> grad,
                     const OptimizerConfig &config);

/// Adam driven by the natural gradient g^+ grad instead of grad.
StepResult natural_adam_step(OptimizerState &state, std::span<const double> grad,
                             const MetricTensor &metric, const OptimizerConfig &config);

struct RunRecord {
    std::size_t iteration = 0;
    double loss = 0.0;
    double energy = 0.0;
    double grad_norm = 0.0;
    std::uint64_t qevals_cum = 0;
    double wall_ms = 0.0;
    std::optional<SolverDiagnostics> diagnostics;
    bool aborted = false;
};

struct RunOptions {
    std::size_t max_iters = 200;
    bool record_wall_time = true;
    /// Sampling seed for the final-row gradient report; unused in analytic mode.
    std::uint64_t report_seed = 0;
};

/**
 * Runs the optimizer from `init` for up to max_iters steps.
 *
 * Row t describes theta_t: its exact loss and energy, the norm of the
 * gradient estimate at theta_t, and the evaluations and wall time spent to
 * reach it. Each step charges 2d evaluations for the gradient plus L for a
 * block or diagonal metric. Full metrics are simulator-only and charge
 * nothing. A non-finite loss ends the run with an `aborted` row.
 */
[[nodiscard]] std::vector<RunRecord> run_optimization(const Objective &obj,
                                                      std::span<const double> init,
                                                      const OptimizerConfig &config,
                                                      Estimator &estimator,
                                                      const RunOptions &options);

/// Evaluations charged per step for this configuration.
[[nodiscard]] std::uint64_t evaluations_per_step(const Objective &obj,
                                                 const OptimizerConfig &config);

} // namespace qnglab
