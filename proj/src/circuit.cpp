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
#include "qnglab/circuit.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "qnglab/rng.hpp"

namespace qnglab {

namespace {

std::size_t expected_arity(FixedKind kind) { return kind == FixedKind::CZ ? 2 : 1; }

void check_fixed(const FixedGate &gate, std::size_t n_qubits) {
    if (gate.qubits.size() != expected_arity(gate.kind)) {
        throw std::invalid_argument("Gate " + gate_name(gate) + " has wrong qubit count");
    }
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
        if (gate.qubits[i] >= n_qubits) {
            throw std::invalid_argument("Gate " + gate_name(gate) + " qubit index " +
                                        std::to_string(gate.qubits[i]) +
                                        " out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (gate.qubits[i] == gate.qubits[j]) {
                throw std::invalid_argument("Gate " + gate_name(gate) +
                                            " repeats a qubit");
            }
        }
    }
}

} // namespace

std::string gate_name(const Gate &gate) {
    if (const auto *rot = std::get_if<PauliRotation>(&gate)) {
        return std::string("R") + to_char(rot->axis);
    }
    switch (std::get<FixedGate>(gate).kind) {
    case FixedKind::CZ:
        return "CZ";
    case FixedKind::H:
        return "H";
    case FixedKind::RYFixed:
        return "RY-fixed";
    case FixedKind::Sdg:
        return "S-dagger";
    case FixedKind::X:
        return "X";
    case FixedKind::Y:
        return "Y";
    case FixedKind::Z:
        return "Z";
    }
    return "?";
}

Circuit::Circuit(std::size_t n_qubits, std::vector<Layer> layers,
                 std::vector<FixedGate> trailing, std::size_t param_count)
    : n_qubits_(n_qubits), layers_(std::move(layers)), trailing_(std::move(trailing)),
      param_count_(param_count) {
    if (n_qubits_ == 0 || n_qubits_ > 63) {
        throw std::invalid_argument("Circuit needs between 1 and 63 qubits");
    }
    std::vector<bool> param_seen(param_count_, false);
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const Layer &layer = layers_[l];
        if (layer.index != l + 1) {
            throw std::invalid_argument("Layer indices must run 1..L in order");
        }
        if (layer.rotations.empty()) {
            throw std::invalid_argument("Layer " + std::to_string(l + 1) +
                                        " has no parametrized gates");
        }
        for (const auto &gate : layer.fixed) {
            check_fixed(gate, n_qubits_);
        }
        std::vector<bool> qubit_used(n_qubits_, false);
        for (const auto &rot : layer.rotations) {
            if (rot.qubit >= n_qubits_) {
                throw std::invalid_argument("Rotation qubit index " +
                                            std::to_string(rot.qubit) + " out of range");
            }
            if (qubit_used[rot.qubit]) {
                throw std::invalid_argument("Layer " + std::to_string(l + 1) +
                                            " has two rotations on qubit " +
                                            std::to_string(rot.qubit));
            }
            qubit_used[rot.qubit] = true;
            if (rot.param >= param_count_) {
                throw std::invalid_argument("Parameter index " + std::to_string(rot.param) +
                                            " out of range");
            }
            if (param_seen[rot.param]) {
                throw std::invalid_argument("Parameter index " + std::to_string(rot.param) +
                                            " used by more than one gate");
            }
            param_seen[rot.param] = true;
        }
    }
    for (const auto &gate : trailing_) {
        check_fixed(gate, n_qubits_);
    }
}

const Layer &Circuit::layer(std::size_t l) const {
    if (l < 1 || l > layers_.size()) {
        throw std::out_of_range("Layer index " + std::to_string(l) + " outside [1, " +
                                std::to_string(layers_.size()) + "]");
    }
    return layers_[l - 1];
}

std::vector<std::size_t> Circuit::layer_params(std::size_t l) const {
    std::vector<std::size_t> out;
    for (const auto &rot : layer(l).rotations) {
        out.push_back(rot.param);
    }
    return out;
}

std::size_t Circuit::rotation_count() const noexcept {
    std::size_t count = 0;
    for (const auto &layer : layers_) {
        count += layer.rotations.size();
    }
    return count;
}

std::vector<Gate> Circuit::flatten() const {
    std::vector<Gate> out;
    for (const auto &layer : layers_) {
        out.insert(out.end(), layer.fixed.begin(), layer.fixed.end());
        out.insert(out.end(), layer.rotations.begin(), layer.rotations.end());
    }
    out.insert(out.end(), trailing_.begin(), trailing_.end());
    return out;
}

Circuit layerize(std::span<const Gate> gates, std::size_t n_qubits) {
    std::vector<Layer> layers;
    Layer current;
    std::vector<bool> qubit_used(n_qubits, false);
    std::size_t rotations = 0;

    auto close = [&] {
        current.index = layers.size() + 1;
        layers.push_back(std::move(current));
        current = Layer{};
        std::fill(qubit_used.begin(), qubit_used.end(), false);
    };

    for (const auto &gate : gates) {
        if (const auto *rot = std::get_if<PauliRotation>(&gate)) {
            if (rot->qubit >= n_qubits) {
                throw std::invalid_argument("Rotation qubit index " +
                                            std::to_string(rot->qubit) + " out of range");
            }
            if (qubit_used[rot->qubit]) {
                close();
            }
            qubit_used[rot->qubit] = true;
            current.rotations.push_back(*rot);
            ++rotations;
        } else {
            const auto &fixed = std::get<FixedGate>(gate);
            check_fixed(fixed, n_qubits);
            if (!current.rotations.empty()) {
                close();
            }
            current.fixed.push_back(fixed);
        }
    }
    if (!current.rotations.empty()) {
        close();
    }

    std::vector<bool> seen(rotations, false);
    for (const auto &layer : layers) {
        for (const auto &rot : layer.rotations) {
            if (rot.param >= rotations) {
                throw std::invalid_argument(
                    "Parameter index " + std::to_string(rot.param) +
                    " outside [0, " + std::to_string(rotations) + ")");
            }
            if (seen[rot.param]) {
                throw std::invalid_argument("Duplicate parameter index " +
                                            std::to_string(rot.param));
            }
            seen[rot.param] = true;
        }
    }
    return Circuit(n_qubits, std::move(layers), std::move(current.fixed), rotations);
}

Circuit subcircuit_prefix(const Circuit &circuit, std::size_t l) {
    if (l < 1 || l > circuit.num_layers()) {
        throw std::out_of_range("Subcircuit layer " + std::to_string(l) + " outside [1, " +
                                std::to_string(circuit.num_layers()) + "]");
    }
    std::vector<Layer> layers(circuit.layers().begin(),
                              circuit.layers().begin() + static_cast<std::ptrdiff_t>(l));
    return Circuit(circuit.n_qubits(), std::move(layers), {}, circuit.param_count());
}

std::vector<PauliWord> generators_for_layer(const Circuit &circuit, std::size_t l) {
    std::vector<PauliWord> out;
    for (const auto &rot : circuit.layer(l).rotations) {
        out.push_back(PauliWord::single(rot.qubit, rot.axis, 0.5));
    }
    return out;
}

BenchmarkProblem build_benchmark_circuit(std::size_t n_qubits, std::size_t layers,
                                         std::uint64_t seed) {
    if (n_qubits < 2) {
        throw std::invalid_argument("Benchmark circuit needs at least 2 qubits");
    }
    if (layers < 1) {
        throw std::invalid_argument("Benchmark circuit needs at least 1 layer");
    }
    static constexpr PauliAxis kAxes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    CounterRng rng(seed, "benchmark-axes");

    std::vector<Gate> flat;
    for (std::size_t q = 0; q < n_qubits; ++q) {
        flat.push_back(gates::ry_fixed(q, std::numbers::pi / 4));
    }
    std::size_t param = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t q = 0; q < n_qubits; ++q) {
            flat.push_back(gates::rot(kAxes[rng.below(3)], q, param++));
        }
        for (std::size_t q = 0; q + 1 < n_qubits; ++q) {
            flat.push_back(gates::cz(q, q + 1));
        }
    }
    PauliWord observable(1.0, {{0, PauliAxis::Z}, {1, PauliAxis::Z}});
    return {layerize(flat, n_qubits), std::move(observable)};
}

} // namespace qnglab
