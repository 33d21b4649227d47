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
#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "qnglab/rng.hpp"
#include "qnglab/statevector.hpp"

namespace qnglab {

void ShotBudget::validate() const {
    if (mode == Mode::Sampled) {
        if (shots < 1) {
            throw std::invalid_argument("Sampled mode needs at least one shot");
        }
        if (!seed) {
            throw std::invalid_argument("Sampled mode needs a seed");
        }
    }
}

std::string ShotBudget::label() const {
    return is_analytic() ? std::string("analytic") : std::to_string(shots);
}

bool product_diagonalizable(std::span<const PauliWord> words) {
    std::map<std::size_t, PauliAxis> basis;
    for (const auto &word : words) {
        for (const auto &[qubit, axis] : word.factors()) {
            auto [it, inserted] = basis.emplace(qubit, axis);
            if (!inserted && it->second != axis) {
                return false;
            }
        }
    }
    return true;
}

std::vector<double> sample_commuting_paulis(const StateVector &state,
                                            std::span<const PauliWord> words,
                                            const ShotBudget &budget, std::uint64_t stream) {
    budget.validate();
    std::map<std::size_t, PauliAxis> basis;
    for (const auto &word : words) {
        if (word.min_qubits() > state.n_qubits()) {
            throw std::out_of_range("Observable " + word.to_string() +
                                    " acts outside the register");
        }
        for (const auto &[qubit, axis] : word.factors()) {
            auto [it, inserted] = basis.emplace(qubit, axis);
            if (!inserted && it->second != axis) {
                throw std::invalid_argument(
                    "Words are not diagonal in a common product basis (qubit " +
                    std::to_string(qubit) + ")");
            }
        }
    }

    std::vector<double> out(words.size());
    if (budget.is_analytic()) {
        for (std::size_t k = 0; k < words.size(); ++k) {
            out[k] = pauli_expectation(state, words[k]);
        }
        return out;
    }

    StateVector rotated = state;
    for (const auto &[qubit, axis] : basis) {
        if (axis == PauliAxis::X) {
            rotated.apply(FixedGate{FixedKind::H, {qubit}});
        } else if (axis == PauliAxis::Y) {
            rotated.apply(FixedGate{FixedKind::Sdg, {qubit}});
            rotated.apply(FixedGate{FixedKind::H, {qubit}});
        }
    }

    std::vector<double> cdf = rotated.probabilities();
    for (std::size_t i = 1; i < cdf.size(); ++i) {
        cdf[i] += cdf[i - 1];
    }
    const double total = cdf.back();

    CounterRng rng(*budget.seed, stream);
    std::vector<std::uint32_t> counts(cdf.size(), 0);
    for (std::size_t s = 0; s < budget.shots; ++s) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            --it;
        }
        ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }

    for (std::size_t k = 0; k < words.size(); ++k) {
        const std::uint64_t mask = words[k].support_mask();
        long long signed_count = 0;
        for (std::uint64_t x = 0; x < counts.size(); ++x) {
            if (counts[x] == 0) {
                continue;
            }
            signed_count += (std::popcount(x & mask) % 2 == 0) ? counts[x] : -static_cast<long long>(counts[x]);
        }
        out[k] = words[k].coefficient() * static_cast<double>(signed_count) /
                 static_cast<double>(budget.shots);
    }
    return out;
}

Estimator::Estimator(ShotBudget budget) : budget_(budget) { budget_.validate(); }

std::vector<double> Estimator::measure(const StateVector &state,
                                       std::span<const PauliWord> words) {
    const std::uint64_t stream = evaluations_.fetch_add(1, std::memory_order_relaxed);
    return sample_commuting_paulis(state, words, budget_, stream);
}

} // namespace qnglab
