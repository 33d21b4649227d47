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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qnglab/circuit.hpp"
#include "qnglab/pauli.hpp"
#include "qnglab/statevector.hpp"

namespace qnglab {

/// Half: L = <H>/2. Plain: L = <H>, the energy.
enum class LossConvention : std::uint8_t { Plain, Half };

[[nodiscard]] std::string to_string(LossConvention convention);
[[nodiscard]] LossConvention loss_convention_from_string(const std::string &text);

/// Circuit plus a Hermitian observable written as a sum of Pauli words.
struct Objective {
    Circuit circuit;
    std::vector<PauliWord> observable;
    LossConvention convention = LossConvention::Plain;

    Objective(Circuit c, std::vector<PauliWord> h, LossConvention conv = LossConvention::Plain);
    Objective(Circuit c, PauliWord h, LossConvention conv = LossConvention::Plain);

    [[nodiscard]] double loss_scale() const noexcept {
        return convention == LossConvention::Half ? 0.5 : 1.0;
    }
    /// Groups of observable terms that share a product eigenbasis. Each group
    /// costs one quantum evaluation.
    [[nodiscard]] const std::vector<std::vector<PauliWord>> &measurement_groups() const noexcept {
        return groups_;
    }

  private:
    std::vector<std::vector<PauliWord>> groups_;
};

struct GradientVector {
    std::vector<double> values;
    std::uint64_t quantum_evals_used = 0;

    [[nodiscard]] double norm() const;
};

/// Exact <H>, no evaluation counted. For monitoring and oracles.
[[nodiscard]] double exact_energy(const Objective &obj, std::span<const double> params);

/// Estimated <H> through the estimator (one evaluation per measurement group).
[[nodiscard]] double estimate_energy(const Objective &obj, std::span<const double> params,
                                     Estimator &estimator);

/// Loss under the objective's convention.
[[nodiscard]] double loss(const Objective &obj, std::span<const double> params,
                          Estimator &estimator);

/// d_i L = (E(theta + pi/2 e_i) - E(theta - pi/2 e_i)) / 2, scaled by the
/// loss convention. 2d evaluations for a single-group observable.
[[nodiscard]] GradientVector parameter_shift_gradient(const Objective &obj,
                                                      std::span<const double> params,
                                                      Estimator &estimator);

/// Central differences of the exact loss with step h > 0.
[[nodiscard]] GradientVector finite_difference_gradient(const Objective &obj,
                                                        std::span<const double> params,
                                                        double h);

} // namespace qnglab
