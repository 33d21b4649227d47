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
#include "qnglab/pauli.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace qnglab {

char to_char(PauliAxis axis) noexcept {
    switch (axis) {
    case PauliAxis::X:
        return 'X';
    case PauliAxis::Y:
        return 'Y';
    case PauliAxis::Z:
        return 'Z';
    }
    return '?';
}

PauliAxis axis_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'X':
        return PauliAxis::X;
    case 'Y':
        return PauliAxis::Y;
    case 'Z':
        return PauliAxis::Z;
    default:
        throw std::invalid_argument(std::string("Unknown Pauli axis '") + c + "'");
    }
}

PauliWord::PauliWord(double coefficient, std::map<std::size_t, PauliAxis> factors)
    : coefficient_(coefficient), factors_(std::move(factors)) {
    if (!std::isfinite(coefficient_)) {
        throw std::invalid_argument("PauliWord coefficient must be finite");
    }
    if (!factors_.empty() && factors_.rbegin()->first >= 64) {
        throw std::invalid_argument("PauliWord qubit index exceeds 63");
    }
}

PauliWord PauliWord::single(std::size_t qubit, PauliAxis axis, double coefficient) {
    return PauliWord(coefficient, {{qubit, axis}});
}

PauliWord PauliWord::parse(std::string_view text) {
    double coefficient = 1.0;
    if (auto star = text.find('*'); star != std::string_view::npos) {
        std::string head(text.substr(0, star));
        std::size_t used = 0;
        try {
            coefficient = std::stod(head, &used);
        } catch (const std::exception &) {
            throw std::invalid_argument("Bad PauliWord coefficient in '" +
                                        std::string(text) + "'");
        }
        text.remove_prefix(star + 1);
    }
    std::map<std::size_t, PauliAxis> factors;
    std::istringstream tokens{std::string(text)};
    std::string token;
    while (tokens >> token) {
        if (token == "I") {
            continue;
        }
        if (token.size() < 2) {
            throw std::invalid_argument("Bad Pauli factor '" + token + "'");
        }
        const PauliAxis axis = axis_from_char(token.front());
        std::size_t qubit = 0;
        const auto *first = token.data() + 1;
        const auto *last = token.data() + token.size();
        auto [ptr, ec] = std::from_chars(first, last, qubit);
        if (ec != std::errc{} || ptr != last) {
            throw std::invalid_argument("Bad Pauli factor '" + token + "'");
        }
        if (!factors.emplace(qubit, axis).second) {
            throw std::invalid_argument("Qubit repeated in PauliWord '" +
                                        std::string(text) + "'");
        }
    }
    return PauliWord(coefficient, std::move(factors));
}

std::size_t PauliWord::min_qubits() const noexcept {
    return factors_.empty() ? 0 : factors_.rbegin()->first + 1;
}

PauliWord PauliWord::scaled(double factor) const {
    return PauliWord(coefficient_ * factor, factors_);
}

PauliWord PauliWord::unit() const { return PauliWord(1.0, factors_); }

namespace {
std::uint64_t mask_for(const std::map<std::size_t, PauliAxis> &factors,
                       PauliAxis axis) {
    std::uint64_t mask = 0;
    for (const auto &[qubit, a] : factors) {
        if (a == axis) {
            mask |= std::uint64_t{1} << qubit;
        }
    }
    return mask;
}
} // namespace

std::uint64_t PauliWord::x_mask() const noexcept { return mask_for(factors_, PauliAxis::X); }
std::uint64_t PauliWord::y_mask() const noexcept { return mask_for(factors_, PauliAxis::Y); }
std::uint64_t PauliWord::z_mask() const noexcept { return mask_for(factors_, PauliAxis::Z); }

std::uint64_t PauliWord::support_mask() const noexcept {
    std::uint64_t mask = 0;
    for (const auto &entry : factors_) {
        mask |= std::uint64_t{1} << entry.first;
    }
    return mask;
}

std::string PauliWord::to_string() const {
    std::ostringstream out;
    out.precision(17);
    if (coefficient_ != 1.0) {
        out << coefficient_ << '*';
    }
    if (factors_.empty()) {
        out << 'I';
    }
    bool first = true;
    for (const auto &[qubit, axis] : factors_) {
        if (!first) {
            out << ' ';
        }
        out << to_char(axis) << qubit;
        first = false;
    }
    return out.str();
}

PauliWord operator*(const PauliWord &a, const PauliWord &b) {
    std::map<std::size_t, PauliAxis> factors = a.factors();
    for (const auto &[qubit, axis] : b.factors()) {
        auto it = factors.find(qubit);
        if (it == factors.end()) {
            factors.emplace(qubit, axis);
        } else if (it->second == axis) {
            factors.erase(it);
        } else {
            throw std::invalid_argument(
                "Product of anticommuting Pauli factors is not Hermitian");
        }
    }
    return PauliWord(a.coefficient() * b.coefficient(), std::move(factors));
}

bool qubitwise_compatible(const PauliWord &a, const PauliWord &b) {
    for (const auto &[qubit, axis] : a.factors()) {
        auto it = b.factors().find(qubit);
        if (it != b.factors().end() && it->second != axis) {
            return false;
        }
    }
    return true;
}

Eigen::MatrixXcd to_matrix(const PauliWord &word, std::size_t n_qubits) {
    if (word.min_qubits() > n_qubits) {
        throw std::invalid_argument("PauliWord acts outside the register");
    }
    if (n_qubits > 14) {
        throw std::invalid_argument("Dense Pauli matrices are limited to 14 qubits");
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::uint64_t flip = word.x_mask() | word.y_mask();
    const std::uint64_t sign = word.y_mask() | word.z_mask();
    static constexpr std::complex<double> kIPowers[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> phase =
        word.coefficient() * kIPowers[std::popcount(word.y_mask()) % 4];

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        const double s = (std::popcount(x & sign) % 2 == 0) ? 1.0 : -1.0;
        m(x ^ flip, x) = phase * s;
    }
    return m;
}

Eigen::MatrixXcd to_matrix(std::span<const PauliWord> terms, std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &term : terms) {
        m += to_matrix(term, n_qubits);
    }
    return m;
}

} // namespace qnglab
