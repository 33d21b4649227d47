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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnglab/circuit.hpp"
#include "qnglab/statevector.hpp"

namespace qnglab {

enum class MetricMode : std::uint8_t { Full, BlockDiagonal, Diagonal };

[[nodiscard]] std::string to_string(MetricMode mode);
/// Accepts full | block | block-diagonal | diag | diagonal.
[[nodiscard]] MetricMode metric_mode_from_string(const std::string &text);

/// Complex d x d quantum geometric tensor.
struct QGTensor {
    Eigen::MatrixXcd entries;

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(entries.rows());
    }
};

/**
 * @brief Real symmetric metric g = Re G, or an approximation of it.
 *
 * `blocks` lists the parameter indices of each layer for block-diagonal and
 * diagonal tensors; entries coupling two different blocks are exactly zero.
 * For a full tensor `blocks` holds a single block with every index.
 */
struct MetricTensor {
    Eigen::MatrixXd entries;
    MetricMode mode = MetricMode::Full;
    std::vector<std::vector<std::size_t>> blocks;
    std::uint64_t quantum_evals = 0;

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(entries.rows());
    }
    [[nodiscard]] static MetricTensor identity(std::size_t d);
    [[nodiscard]] static MetricTensor full(Eigen::MatrixXd entries);
};

/// G_ij = <d_i psi, d_j psi> - <d_i psi, psi><psi, d_j psi>.
[[nodiscard]] QGTensor qgt_from_states(const StateVector &psi,
                                       std::span<const StateVector> derivatives);

[[nodiscard]] QGTensor qgt_exact(const Circuit &circuit, std::span<const double> params);

/// Re of qgt_exact, symmetrized.
[[nodiscard]] MetricTensor fubini_study_metric(const Circuit &circuit,
                                               std::span<const double> params);

/// A_i = i <psi, d_i psi>.
[[nodiscard]] std::vector<double> berry_connection(const Circuit &circuit,
                                                   std::span<const double> params);

/**
 * Layer-wise covariance blocks
 *   g_ij = 1/4 (<P_i P_j> - <P_i><P_j>)  on psi_l = U_[1:l]|0>,
 * with every P_i and P_i P_j of a layer estimated from one measurement.
 * Consumes exactly L evaluations from `estimator`.
 */
[[nodiscard]] MetricTensor qgt_block_diagonal(const Circuit &circuit,
                                              std::span<const double> params,
                                              Estimator &estimator);

/// g_ii = 1/4 (1 - <P_i>^2), zero elsewhere. L evaluations.
[[nodiscard]] MetricTensor qgt_diagonal(const Circuit &circuit, std::span<const double> params,
                                        Estimator &estimator);

/// Dispatches on mode. Full mode is simulator-only and consumes no evaluations.
[[nodiscard]] MetricTensor compute_metric(MetricMode mode, const Circuit &circuit,
                                          std::span<const double> params, Estimator &estimator);

/**
 * @brief Black-box parametric family of strictly positive distributions.
 */
struct ProbFamily {
    std::function<std::vector<double>(std::span<const double>)> evaluate;
    std::size_t param_count = 0;
    std::size_t outcome_count = 0;

    /// Evaluates and checks positivity, length and normalization.
    [[nodiscard]] std::vector<double> operator()(std::span<const double> params) const;
};

/// Softmax over `logits_of(theta)`; a convenient strictly positive family.
[[nodiscard]] ProbFamily softmax_family(
    std::size_t param_count, std::size_t outcome_count,
    std::function<std::vector<double>(std::span<const double>)> logits_of);

/// I_ij = sum_x p(x) d_i log p(x) d_j log p(x), log-derivatives by central
/// differences with step 1e-6.
[[nodiscard]] MetricTensor fisher_information(const ProbFamily &family,
                                              std::span<const double> params);

/// sum_x sqrt(p(x)) |x> on the smallest register that holds N outcomes.
[[nodiscard]] StateVector amplitude_embed(const ProbFamily &family,
                                          std::span<const double> params);
[[nodiscard]] StateVector amplitude_embed(const ProbFamily &family,
                                          std::span<const double> params,
                                          std::size_t n_qubits);

/// arccos |<a, b>|, clamped; in [0, pi/2].
[[nodiscard]] double fubini_study_distance(const StateVector &a, const StateVector &b);

/// arccos <sqrt p, sqrt q>, clamped.
[[nodiscard]] double fisher_rao_distance(std::span<const double> p, std::span<const double> q);

} // namespace qnglab
