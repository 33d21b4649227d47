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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qnglab/pauli.hpp"

namespace qnglab {

enum class FixedKind : std::uint8_t { CZ, H, RYFixed, Sdg, X, Y, Z };

/// Parameter-free gate. `angle` is used by RYFixed only. `phase` multiplies
/// the gate by exp(i*phase); physically irrelevant, kept for global-phase
/// checks.
struct FixedGate {
    FixedKind kind;
    std::vector<std::size_t> qubits;
    double angle = 0.0;
    double phase = 0.0;

    friend bool operator==(const FixedGate &, const FixedGate &) = default;
};

/// exp(-i * theta[param] / 2 * P) on a single qubit.
struct PauliRotation {
    PauliAxis axis;
    std::size_t qubit;
    std::size_t param;

    friend bool operator==(const PauliRotation &, const PauliRotation &) = default;
};

using Gate = std::variant<FixedGate, PauliRotation>;

namespace gates {
[[nodiscard]] inline Gate rx(std::size_t q, std::size_t p) { return PauliRotation{PauliAxis::X, q, p}; }
[[nodiscard]] inline Gate ry(std::size_t q, std::size_t p) { return PauliRotation{PauliAxis::Y, q, p}; }
[[nodiscard]] inline Gate rz(std::size_t q, std::size_t p) { return PauliRotation{PauliAxis::Z, q, p}; }
[[nodiscard]] inline Gate rot(PauliAxis a, std::size_t q, std::size_t p) { return PauliRotation{a, q, p}; }
[[nodiscard]] inline Gate cz(std::size_t a, std::size_t b) { return FixedGate{FixedKind::CZ, {a, b}}; }
[[nodiscard]] inline Gate h(std::size_t q) { return FixedGate{FixedKind::H, {q}}; }
[[nodiscard]] inline Gate sdg(std::size_t q) { return FixedGate{FixedKind::Sdg, {q}}; }
[[nodiscard]] inline Gate x(std::size_t q) { return FixedGate{FixedKind::X, {q}}; }
[[nodiscard]] inline Gate y(std::size_t q) { return FixedGate{FixedKind::Y, {q}}; }
[[nodiscard]] inline Gate z(std::size_t q) { return FixedGate{FixedKind::Z, {q}}; }
[[nodiscard]] inline Gate ry_fixed(std::size_t q, double angle) {
    return FixedGate{FixedKind::RYFixed, {q}, angle};
}
} // namespace gates

/**
 * @brief One layer W_l followed by V_l.
 *
 * The rotations act on pairwise-disjoint qubits, so they commute and their
 * generators can be measured together.
 */
struct Layer {
    std::size_t index = 1; ///< 1-based
    std::vector<FixedGate> fixed;
    std::vector<PauliRotation> rotations;

    friend bool operator==(const Layer &, const Layer &) = default;
};

/**
 * @brief Layered parametrized circuit U = [trailing] V_L W_L ... V_1 W_1.
 *
 * Immutable once built. Fixed gates after the last parametric group live in
 * `trailing()`; they do not form a counted layer.
 */
class Circuit {
  public:
    /// Validates every structural invariant; throws std::invalid_argument.
    Circuit(std::size_t n_qubits, std::vector<Layer> layers,
            std::vector<FixedGate> trailing, std::size_t param_count);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t num_layers() const noexcept { return layers_.size(); }
    [[nodiscard]] std::size_t param_count() const noexcept { return param_count_; }
    [[nodiscard]] const std::vector<Layer> &layers() const noexcept { return layers_; }
    [[nodiscard]] const Layer &layer(std::size_t l) const; ///< 1-based
    [[nodiscard]] const std::vector<FixedGate> &trailing() const noexcept { return trailing_; }

    /// Parameter indices of layer l in gate order.
    [[nodiscard]] std::vector<std::size_t> layer_params(std::size_t l) const;
    /// Number of rotations (used parameters) in the circuit.
    [[nodiscard]] std::size_t rotation_count() const noexcept;

    /// Gates in execution order: W_1, V_1, ..., W_L, V_L, trailing.
    [[nodiscard]] std::vector<Gate> flatten() const;

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    std::size_t n_qubits_;
    std::vector<Layer> layers_;
    std::vector<FixedGate> trailing_;
    std::size_t param_count_;
};

/**
 * Groups a flat gate list into layers. Consecutive rotations on distinct
 * qubits share a layer; a rotation on an already-used qubit, or any fixed gate
 * following a rotation, closes the current layer. Fixed gates join the W of
 * the next layer.
 *
 * Parameter indices must be exactly {0, ..., d-1} with d the number of
 * rotations, each used once.
 */
[[nodiscard]] Circuit layerize(std::span<const Gate> gates, std::size_t n_qubits);

/// U_[1:l]: layers 1..l with their fixed parts. Keeps the parent parameter
/// count so the same parameter vector applies.
[[nodiscard]] Circuit subcircuit_prefix(const Circuit &circuit, std::size_t l);

/// Generators K_i = P_i / 2 of layer l, in the layer's gate order.
[[nodiscard]] std::vector<PauliWord> generators_for_layer(const Circuit &circuit,
                                                          std::size_t l);

struct BenchmarkProblem {
    Circuit circuit;
    PauliWord observable;
};

/**
 * Barren-plateau benchmark: RY(pi/4) on every qubit, then `layers` rounds of
 * one seeded random-axis rotation per qubit followed by an open CZ ladder.
 * Observable Z0 Z1.
 */
[[nodiscard]] BenchmarkProblem build_benchmark_circuit(std::size_t n_qubits,
                                                       std::size_t layers,
                                                       std::uint64_t seed);

[[nodiscard]] std::string gate_name(const Gate &gate);

} // namespace qnglab
