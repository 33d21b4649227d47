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
#include "qnglab/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qnglab {

using cplx = std::complex<double>;

namespace {

constexpr cplx kI{0.0, 1.0};

void check_register(std::size_t n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("Register size " + std::to_string(n_qubits) +
                                    " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
}

void check_params(const Circuit &circuit, std::span<const double> params) {
    if (params.size() != circuit.param_count()) {
        throw std::invalid_argument("Parameter vector has length " +
                                    std::to_string(params.size()) + ", circuit expects " +
                                    std::to_string(circuit.param_count()));
    }
}

} // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    check_register(n_qubits);
    amplitudes_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    check_register(n_qubits);
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
        throw std::invalid_argument("Amplitude vector length does not match 2^n");
    }
}

cplx StateVector::inner(const StateVector &other) const {
    if (other.dim() != dim()) {
        throw std::invalid_argument("Inner product of states with different dimensions");
    }
    return amplitudes_.dot(other.amplitudes_);
}

void StateVector::check_qubit(std::size_t qubit) const {
    if (qubit >= n_qubits_) {
        throw std::out_of_range("Qubit " + std::to_string(qubit) + " outside register of " +
                                std::to_string(n_qubits_));
    }
}

void StateVector::apply_1q(std::size_t qubit, cplx m00, cplx m01, cplx m10, cplx m11) {
    check_qubit(qubit);
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t n = dim();
    cplx *v = amplitudes_.data();
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t j = base; j < base + stride; ++j) {
            const cplx a0 = v[j];
            const cplx a1 = v[j + stride];
            v[j] = m00 * a0 + m01 * a1;
            v[j + stride] = m10 * a0 + m11 * a1;
        }
    }
}

void StateVector::apply(const FixedGate &gate) {
    const double r = std::numbers::sqrt2 / 2.0;
    switch (gate.kind) {
    case FixedKind::CZ: {
        check_qubit(gate.qubits.at(0));
        check_qubit(gate.qubits.at(1));
        const std::size_t mask =
            (std::size_t{1} << gate.qubits[0]) | (std::size_t{1} << gate.qubits[1]);
        for (std::size_t x = 0; x < dim(); ++x) {
            if ((x & mask) == mask) {
                amplitudes_[static_cast<Eigen::Index>(x)] *= -1.0;
            }
        }
        break;
    }
    case FixedKind::H:
        apply_1q(gate.qubits.at(0), r, r, r, -r);
        break;
    case FixedKind::RYFixed:
        apply_rotation(PauliAxis::Y, gate.qubits.at(0), gate.angle);
        break;
    case FixedKind::Sdg:
        apply_1q(gate.qubits.at(0), 1.0, 0.0, 0.0, -kI);
        break;
    case FixedKind::X:
        apply_1q(gate.qubits.at(0), 0.0, 1.0, 1.0, 0.0);
        break;
    case FixedKind::Y:
        apply_1q(gate.qubits.at(0), 0.0, -kI, kI, 0.0);
        break;
    case FixedKind::Z:
        apply_1q(gate.qubits.at(0), 1.0, 0.0, 0.0, -1.0);
        break;
    }
    if (gate.phase != 0.0) {
        amplitudes_ *= std::polar(1.0, gate.phase);
    }
}

void StateVector::apply(const PauliRotation &rotation, double angle) {
    apply_rotation(rotation.axis, rotation.qubit, angle);
}

void StateVector::apply_rotation(PauliAxis axis, std::size_t qubit, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (axis) {
    case PauliAxis::X:
        apply_1q(qubit, c, -kI * s, -kI * s, c);
        break;
    case PauliAxis::Y:
        apply_1q(qubit, c, -s, s, c);
        break;
    case PauliAxis::Z:
        apply_1q(qubit, cplx(c, -s), 0.0, 0.0, cplx(c, s));
        break;
    }
}

void StateVector::apply(const PauliWord &word) {
    for (const auto &[qubit, axis] : word.factors()) {
        switch (axis) {
        case PauliAxis::X:
            apply_1q(qubit, 0.0, 1.0, 1.0, 0.0);
            break;
        case PauliAxis::Y:
            apply_1q(qubit, 0.0, -kI, kI, 0.0);
            break;
        case PauliAxis::Z:
            apply_1q(qubit, 1.0, 0.0, 0.0, -1.0);
            break;
        }
    }
    amplitudes_ *= word.coefficient();
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(dim());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::norm(amplitudes_[static_cast<Eigen::Index>(i)]);
    }
    return p;
}

StateVector zero_state(std::size_t n_qubits) { return StateVector(n_qubits); }

void apply_circuit(StateVector &state, const Circuit &circuit, std::span<const double> params) {
    check_params(circuit, params);
    if (state.n_qubits() != circuit.n_qubits()) {
        throw std::invalid_argument("State and circuit register sizes differ");
    }
    for (const auto &layer : circuit.layers()) {
        for (const auto &gate : layer.fixed) {
            state.apply(gate);
        }
        for (const auto &rot : layer.rotations) {
            state.apply(rot, params[rot.param]);
        }
    }
    for (const auto &gate : circuit.trailing()) {
        state.apply(gate);
    }
}

StateVector run(const Circuit &circuit, std::span<const double> params) {
    StateVector state(circuit.n_qubits());
    apply_circuit(state, circuit, params);
    return state;
}

double pauli_expectation(const StateVector &state, const PauliWord &word) {
    if (word.min_qubits() > state.n_qubits()) {
        throw std::out_of_range("Observable " + word.to_string() +
                                " acts outside the register");
    }
    // P|x> = i^{#Y} (-1)^{popcount(x & (Y|Z))} |x ^ (X|Y)>
    const std::uint64_t flip = word.x_mask() | word.y_mask();
    const std::uint64_t sign = word.y_mask() | word.z_mask();
    const auto &v = state.amplitudes();
    cplx acc = 0.0;
    for (std::uint64_t x = 0; x < state.dim(); ++x) {
        const cplx term = std::conj(v[static_cast<Eigen::Index>(x ^ flip)]) *
                          v[static_cast<Eigen::Index>(x)];
        acc += (std::popcount(x & sign) % 2 == 0) ? term : -term;
    }
    static constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    acc *= kIPowers[std::popcount(word.y_mask()) % 4];
    return word.coefficient() * acc.real();
}

double expectation(const StateVector &state, std::span<const PauliWord> terms) {
    double total = 0.0;
    for (const auto &term : terms) {
        total += pauli_expectation(state, term);
    }
    return total;
}

StateVector derivative_state(const Circuit &circuit, std::span<const double> params,
                             std::size_t i) {
    check_params(circuit, params);
    if (i >= circuit.param_count()) {
        throw std::out_of_range("Parameter index " + std::to_string(i) + " outside [0, " +
                                std::to_string(circuit.param_count()) + ")");
    }
    StateVector state(circuit.n_qubits());
    bool inserted = false;
    for (const auto &layer : circuit.layers()) {
        for (const auto &gate : layer.fixed) {
            state.apply(gate);
        }
        for (const auto &rot : layer.rotations) {
            state.apply(rot, params[rot.param]);
            if (rot.param == i) {
                // K_i = P/2 commutes with its own rotation.
                state.apply(PauliWord::single(rot.qubit, rot.axis, 0.5));
                state.scale(-kI);
                inserted = true;
            }
        }
    }
    if (!inserted) {
        return StateVector(circuit.n_qubits(), Eigen::VectorXcd::Zero(
                                                   static_cast<Eigen::Index>(state.dim())));
    }
    for (const auto &gate : circuit.trailing()) {
        state.apply(gate);
    }
    return state;
}

std::vector<StateVector> derivative_states(const Circuit &circuit,
                                           std::span<const double> params) {
    std::vector<StateVector> out;
    out.reserve(circuit.param_count());
    for (std::size_t i = 0; i < circuit.param_count(); ++i) {
        out.push_back(derivative_state(circuit, params, i));
    }
    return out;
}

} // namespace qnglab
