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

#include <atomic>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qnglab/circuit.hpp"
#include "qnglab/pauli.hpp"

namespace qnglab {

inline constexpr std::size_t kMaxQubits = 24;

/**
 * @brief Dense 2^n amplitude vector. Qubit k is bit k of the basis index.
 *
 * Engine operations keep the norm at one; derivative states are the only
 * un-normalized vectors the engine hands out.
 */
class StateVector {
  public:
    /// |0...0> on n qubits.
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, Eigen::VectorXcd amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(amplitudes_.size());
    }
    [[nodiscard]] const Eigen::VectorXcd &amplitudes() const noexcept { return amplitudes_; }
    [[nodiscard]] std::complex<double> operator[](std::size_t i) const { return amplitudes_[i]; }
    [[nodiscard]] double norm() const { return amplitudes_.norm(); }

    /// <this, other>, antilinear in the first argument.
    [[nodiscard]] std::complex<double> inner(const StateVector &other) const;

    void apply(const FixedGate &gate);
    void apply(const PauliRotation &rotation, double angle);
    void apply_rotation(PauliAxis axis, std::size_t qubit, double angle);
    /// Multiplies by coefficient * P (not a unitary unless |coefficient| = 1).
    void apply(const PauliWord &word);
    void scale(std::complex<double> factor) { amplitudes_ *= factor; }

    /// |amplitude|^2 for every basis index.
    [[nodiscard]] std::vector<double> probabilities() const;

  private:
    void apply_1q(std::size_t qubit, std::complex<double> m00, std::complex<double> m01,
                  std::complex<double> m10, std::complex<double> m11);
    void check_qubit(std::size_t qubit) const;

    std::size_t n_qubits_;
    Eigen::VectorXcd amplitudes_;
};

[[nodiscard]] StateVector zero_state(std::size_t n_qubits);

/// U(theta)|0>, rotations acting as exp(-i theta/2 P).
[[nodiscard]] StateVector run(const Circuit &circuit, std::span<const double> params);

/// Applies the circuit to an arbitrary input state.
void apply_circuit(StateVector &state, const Circuit &circuit, std::span<const double> params);

/// coefficient * <psi|P|psi>.
[[nodiscard]] double pauli_expectation(const StateVector &state, const PauliWord &word);

/// Sum of term expectations.
[[nodiscard]] double expectation(const StateVector &state, std::span<const PauliWord> terms);

/// d psi / d theta_i, by inserting -i K_i directly after the rotation that
/// carries parameter i.
[[nodiscard]] StateVector derivative_state(const Circuit &circuit,
                                           std::span<const double> params, std::size_t i);

/// All d derivative states in parameter order. Parameters no gate uses get a
/// zero vector.
[[nodiscard]] std::vector<StateVector> derivative_states(const Circuit &circuit,
                                                         std::span<const double> params);

// ---------------------------------------------------------------------------
// Measurement
// ---------------------------------------------------------------------------

struct ShotBudget {
    enum class Mode { Analytic, Sampled };

    Mode mode = Mode::Analytic;
    std::size_t shots = 0;
    std::optional<std::uint64_t> seed;

    [[nodiscard]] static ShotBudget analytic() { return {}; }
    [[nodiscard]] static ShotBudget sampled(std::size_t shots, std::uint64_t seed) {
        return {Mode::Sampled, shots, seed};
    }

    [[nodiscard]] bool is_analytic() const noexcept { return mode == Mode::Analytic; }
    /// Throws std::invalid_argument on zero shots or a missing seed.
    void validate() const;
    /// "analytic" or the shot count.
    [[nodiscard]] std::string label() const;
};

/// True when, on every qubit, all words that touch it use the same axis.
[[nodiscard]] bool product_diagonalizable(std::span<const PauliWord> words);

/**
 * Estimates every word from one measurement of `state`.
 *
 * Analytic budgets return exact values. Sampled budgets rotate each measured
 * qubit into the Z basis (X via H, Y via S-dagger then H), draw `shots`
 * bitstrings from the Born distribution by inverse CDF, and average the
 * parity of each word's support. Draws come from the counter stream keyed by
 * (seed, stream).
 */
[[nodiscard]] std::vector<double> sample_commuting_paulis(const StateVector &state,
                                                          std::span<const PauliWord> words,
                                                          const ShotBudget &budget,
                                                          std::uint64_t stream = 0);

/**
 * @brief Measurement front-end that counts quantum evaluations.
 *
 * Each measure() call is one evaluation and consumes one sampling stream,
 * numbered by the running count, so a sequential run replays exactly.
 */
class Estimator {
  public:
    explicit Estimator(ShotBudget budget);

    [[nodiscard]] std::vector<double> measure(const StateVector &state,
                                              std::span<const PauliWord> words);

    [[nodiscard]] std::uint64_t evaluations() const noexcept {
        return evaluations_.load(std::memory_order_relaxed);
    }
    [[nodiscard]] const ShotBudget &budget() const noexcept { return budget_; }

  private:
    ShotBudget budget_;
    std::atomic<std::uint64_t> evaluations_{0};
};

} // namespace qnglab
