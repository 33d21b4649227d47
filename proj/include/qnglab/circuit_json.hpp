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

#include <filesystem>

#include <json.hpp>

#include "qnglab/circuit.hpp"

namespace qnglab {

// Circuit interchange format:
//   {"n_qubits": 2,
//    "gates": [{"kind": "ry", "qubits": [0], "param": 0},
//              {"kind": "cz", "qubits": [0, 1]},
//              {"kind": "ry_fixed", "qubits": [1], "angle": 0.785}]}
// Rotation kinds are rx/ry/rz; fixed kinds are cz/h/ry_fixed/sdg/x/y/z.
// A rotation without "param" takes its ordinal among the rotations.

[[nodiscard]] Circuit circuit_from_json(const nlohmann::json &doc);
[[nodiscard]] nlohmann::json circuit_to_json(const Circuit &circuit);
[[nodiscard]] Circuit load_circuit(const std::filesystem::path &path);

} // namespace qnglab
