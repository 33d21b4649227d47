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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qnglab {

enum class PauliAxis : std::uint8_t { X, Y, Z };

[[nodiscard]] char to_char(PauliAxis axis) noexcept;

/// Parses 'X', 'Y' or 'Z' (either case). Throws std::invalid_argument.
[[nodiscard]] PauliAxis axis_from_char(char c);

/**
 * @brief Real multiple of a tensor product of single-qubit Pauli operators.
 *
 * Qubits absent from the factor map carry the identity. The coefficient is
 * real, so every PauliWord is Hermitian.
 */
class PauliWord {
  public:
    PauliWord() = default;
    PauliWord(double coefficient, std::map<std::size_t, PauliAxis> factors);

    static PauliWord single(std::size_t qubit, PauliAxis axis,
                            double coefficient = 1.0);
    /// Parses strings of the form "Z0 Z1", "0.5*Y3", "-2*X0 Y2" or "I".
    static PauliWord parse(std::string_view text);

    [[nodiscard]] double coefficient() const noexcept { return coefficient_; }
    [[nodiscard]] const std::map<std::size_t, PauliAxis> &factors() const noexcept {
        return factors_;
    }
    [[nodiscard]] bool is_identity() const noexcept { return factors_.empty(); }
    [[nodiscard]] std::size_t weight() const noexcept { return factors_.size(); }
    /// One past the largest qubit index in the support (0 for the identity).
    [[nodiscard]] std::size_t min_qubits() const noexcept;

    [[nodiscard]] PauliWord scaled(double factor) const;
    /// Same operator with coefficient 1.
    [[nodiscard]] PauliWord unit() const;

    /// Bit masks for qubits carrying X, Y and Z respectively.
    [[nodiscard]] std::uint64_t x_mask() const noexcept;
    [[nodiscard]] std::uint64_t y_mask() const noexcept;
    [[nodiscard]] std::uint64_t z_mask() const noexcept;
    [[nodiscard]] std::uint64_t support_mask() const noexcept;

    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const PauliWord &, const PauliWord &) = default;

  private:
    double coefficient_ = 1.0;
    std::map<std::size_t, PauliAxis> factors_;
};

/**
 * Product of two words that agree on every shared qubit. The result stays a
 * real multiple of a Pauli word; shared qubits with differing axes would
 * produce an imaginary phase and are rejected.
 */
[[nodiscard]] PauliWord operator*(const PauliWord &a, const PauliWord &b);

/// True when a and b act with the same axis on every qubit they share.
[[nodiscard]] bool qubitwise_compatible(const PauliWord &a, const PauliWord &b);

/// Dense 2^n x 2^n matrix, qubit k mapped to bit k of the basis index.
[[nodiscard]] Eigen::MatrixXcd to_matrix(const PauliWord &word, std::size_t n_qubits);
[[nodiscard]] Eigen::MatrixXcd to_matrix(std::span<const PauliWord> terms,
                                         std::size_t n_qubits);

} // namespace qnglab
