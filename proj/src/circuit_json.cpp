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
#include "qnglab/circuit_json.hpp"

#include <cctype>
#include <fstream>
#include <stdexcept>

namespace qnglab {

namespace {

using nlohmann::json;

std::vector<std::size_t> read_qubits(const json &gate) {
    if (!gate.contains("qubits") || !gate["qubits"].is_array()) {
        throw std::invalid_argument("Gate entry needs a \"qubits\" array");
    }
    std::vector<std::size_t> qubits;
    for (const auto &q : gate["qubits"]) {
        if (!q.is_number_integer() || q.get<long long>() < 0) {
            throw std::invalid_argument("Qubit indices must be non-negative integers");
        }
        qubits.push_back(q.get<std::size_t>());
    }
    return qubits;
}

FixedKind fixed_kind(const std::string &kind) {
    if (kind == "cz") return FixedKind::CZ;
    if (kind == "h") return FixedKind::H;
    if (kind == "ry_fixed") return FixedKind::RYFixed;
    if (kind == "sdg") return FixedKind::Sdg;
    if (kind == "x") return FixedKind::X;
    if (kind == "y") return FixedKind::Y;
    if (kind == "z") return FixedKind::Z;
    throw std::invalid_argument("Unknown gate kind \"" + kind + "\"");
}

std::string fixed_kind_name(FixedKind kind) {
    switch (kind) {
    case FixedKind::CZ: return "cz";
    case FixedKind::H: return "h";
    case FixedKind::RYFixed: return "ry_fixed";
    case FixedKind::Sdg: return "sdg";
    case FixedKind::X: return "x";
    case FixedKind::Y: return "y";
    case FixedKind::Z: return "z";
    }
    return "?";
}

} // namespace

Circuit circuit_from_json(const json &doc) {
    if (!doc.is_object() || !doc.contains("n_qubits") || !doc["n_qubits"].is_number_integer()) {
        throw std::invalid_argument("Circuit JSON needs an integer \"n_qubits\"");
    }
    const auto n = doc["n_qubits"].get<long long>();
    if (n < 1) {
        throw std::invalid_argument("\"n_qubits\" must be positive");
    }
    std::vector<Gate> flat;
    std::size_t ordinal = 0;
    for (const auto &entry : doc.value("gates", json::array())) {
        if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string()) {
            throw std::invalid_argument("Gate entry needs a string \"kind\"");
        }
        const auto kind = entry["kind"].get<std::string>();
        auto qubits = read_qubits(entry);
        if (kind == "rx" || kind == "ry" || kind == "rz") {
            if (qubits.size() != 1) {
                throw std::invalid_argument("Rotation gates act on exactly one qubit");
            }
            std::size_t param = ordinal;
            if (entry.contains("param") && !entry["param"].is_null()) {
                if (!entry["param"].is_number_integer() || entry["param"].get<long long>() < 0) {
                    throw std::invalid_argument("\"param\" must be a non-negative integer");
                }
                param = entry["param"].get<std::size_t>();
            }
            ++ordinal;
            flat.push_back(PauliRotation{axis_from_char(kind[1]), qubits[0], param});
        } else {
            FixedGate gate{fixed_kind(kind), std::move(qubits)};
            if (gate.kind == FixedKind::RYFixed) {
                if (!entry.contains("angle") || !entry["angle"].is_number()) {
                    throw std::invalid_argument("ry_fixed needs a numeric \"angle\"");
                }
                gate.angle = entry["angle"].get<double>();
            }
            flat.push_back(std::move(gate));
        }
    }
    return layerize(flat, static_cast<std::size_t>(n));
}

json circuit_to_json(const Circuit &circuit) {
    json gates_json = json::array();
    for (const auto &gate : circuit.flatten()) {
        if (const auto *rot = std::get_if<PauliRotation>(&gate)) {
            std::string kind = "r";
            kind += static_cast<char>(std::tolower(to_char(rot->axis)));
            gates_json.push_back({{"kind", kind}, {"qubits", {rot->qubit}}, {"param", rot->param}});
        } else {
            const auto &fixed = std::get<FixedGate>(gate);
            json entry = {{"kind", fixed_kind_name(fixed.kind)}, {"qubits", fixed.qubits}};
            if (fixed.kind == FixedKind::RYFixed) {
                entry["angle"] = fixed.angle;
            }
            gates_json.push_back(std::move(entry));
        }
    }
    return {{"n_qubits", circuit.n_qubits()}, {"gates", std::move(gates_json)}};
}

Circuit load_circuit(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("Cannot open circuit file " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        throw std::invalid_argument("Circuit file " + path.string() + ": " + e.what());
    }
    return circuit_from_json(doc);
}

} // namespace qnglab
