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
#include "qnglab/gradients.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnglab {

std::string to_string(LossConvention convention) {
    return convention == LossConvention::Half ? "half" : "plain";
}

LossConvention loss_convention_from_string(const std::string &text) {
    if (text == "plain") return LossConvention::Plain;
    if (text == "half") return LossConvention::Half;
    throw std::invalid_argument("Unknown loss convention \"" + text + "\"");
}

namespace {

std::vector<std::vector<PauliWord>> group_terms(const std::vector<PauliWord> &terms) {
    std::vector<std::vector<PauliWord>> groups;
    for (const auto &term : terms) {
        bool placed = false;
        for (auto &group : groups) {
            bool fits = true;
            for (const auto &member : group) {
                if (!qubitwise_compatible(member, term)) {
                    fits = false;
                    break;
                }
            }
            if (fits) {
                group.push_back(term);
                placed = true;
                break;
            }
        }
        if (!placed) {
            groups.push_back({term});
        }
    }
    return groups;
}

} // namespace

Objective::Objective(Circuit c, std::vector<PauliWord> h, LossConvention conv)
    : circuit(std::move(c)), observable(std::move(h)), convention(conv) {
    for (const auto &term : observable) {
        if (term.min_qubits() > circuit.n_qubits()) {
            throw std::invalid_argument("Observable term " + term.to_string() +
                                        " acts outside the circuit register");
        }
    }
    groups_ = group_terms(observable);
}

Objective::Objective(Circuit c, PauliWord h, LossConvention conv)
    : Objective(std::move(c), std::vector<PauliWord>{std::move(h)}, conv) {}

double GradientVector::norm() const {
    double s = 0.0;
    for (double v : values) {
        s += v * v;
    }
    return std::sqrt(s);
}

double exact_energy(const Objective &obj, std::span<const double> params) {
    return expectation(run(obj.circuit, params), obj.observable);
}

double estimate_energy(const Objective &obj, std::span<const double> params,
                       Estimator &estimator) {
    const StateVector psi = run(obj.circuit, params);
    double total = 0.0;
    for (const auto &group : obj.measurement_groups()) {
        for (double v : estimator.measure(psi, group)) {
            total += v;
        }
    }
    return total;
}

double loss(const Objective &obj, std::span<const double> params, Estimator &estimator) {
    return obj.loss_scale() * estimate_energy(obj, params, estimator);
}

GradientVector parameter_shift_gradient(const Objective &obj, std::span<const double> params,
                                        Estimator &estimator) {
    if (params.size() != obj.circuit.param_count()) {
        throw std::invalid_argument("Parameter vector length does not match the circuit");
    }
    // Every parametrized gate in a Circuit is a single-qubit Pauli rotation,
    // so the +-pi/2 rule is exact.
    const std::uint64_t before = estimator.evaluations();
    GradientVector grad;
    grad.values.resize(params.size());
    std::vector<double> shifted(params.begin(), params.end());
    constexpr double kShift = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < params.size(); ++i) {
        shifted[i] = params[i] + kShift;
        const double plus = estimate_energy(obj, shifted, estimator);
        shifted[i] = params[i] - kShift;
        const double minus = estimate_energy(obj, shifted, estimator);
        shifted[i] = params[i];
        grad.values[i] = obj.loss_scale() * 0.5 * (plus - minus);
    }
    grad.quantum_evals_used = estimator.evaluations() - before;
    return grad;
}

GradientVector finite_difference_gradient(const Objective &obj, std::span<const double> params,
                                          double h) {
    if (!(h > 0.0)) {
        throw std::invalid_argument("Finite-difference step must be positive");
    }
    GradientVector grad;
    grad.values.resize(params.size());
    std::vector<double> shifted(params.begin(), params.end());
    for (std::size_t i = 0; i < params.size(); ++i) {
        shifted[i] = params[i] + h;
        const double plus = exact_energy(obj, shifted);
        shifted[i] = params[i] - h;
        const double minus = exact_energy(obj, shifted);
        shifted[i] = params[i];
        grad.values[i] = obj.loss_scale() * (plus - minus) / (2.0 * h);
    }
    grad.quantum_evals_used = 2 * params.size() * obj.measurement_groups().size();
    return grad;
}

} // namespace qnglab
