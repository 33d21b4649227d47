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

// Test-only reference implementations. Nothing here calls the simulator in
// src/; states come from dense matrix products and derivatives from finite
// differences, so they can check the library independently.

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <random>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qnglab/circuit.hpp"
#include "qnglab/pauli.hpp"

namespace qnglab::oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat pauli2(PauliAxis a) {
    Mat m(2, 2);
    switch (a) {
    case PauliAxis::X:
        m << 0, 1, 1, 0;
        break;
    case PauliAxis::Y:
        m << 0, cd(0, -1), cd(0, 1), 0;
        break;
    case PauliAxis::Z:
        m << 1, 0, 0, -1;
        break;
    }
    return m;
}

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

/// Single-qubit operator on qubit q of n; qubit q is bit q of the index.
inline Mat embed(const Mat &u, std::size_t q, std::size_t n) {
    Mat out = Mat::Identity(1, 1);
    for (std::size_t k = n; k-- > 0;) {
        out = kron(out, k == q ? u : Mat::Identity(2, 2));
    }
    return out;
}

inline Mat rotation(PauliAxis a, double theta) {
    return std::cos(theta / 2) * Mat::Identity(2, 2) - cd(0, 1) * std::sin(theta / 2) * pauli2(a);
}

inline Mat fixed_matrix(const FixedGate &g, std::size_t n) {
    const cd phase = std::exp(cd(0, g.phase));
    Mat u(2, 2);
    switch (g.kind) {
    case FixedKind::CZ: {
        const auto dim = Eigen::Index{1} << n;
        Mat m = Mat::Identity(dim, dim);
        for (Eigen::Index x = 0; x < dim; ++x)
            if (((x >> g.qubits[0]) & 1) && ((x >> g.qubits[1]) & 1)) m(x, x) = -1;
        return phase * m;
    }
    case FixedKind::H:
        u << 1, 1, 1, -1;
        u /= std::sqrt(2.0);
        break;
    case FixedKind::RYFixed:
        u = rotation(PauliAxis::Y, g.angle);
        break;
    case FixedKind::Sdg:
        u << 1, 0, 0, cd(0, -1);
        break;
    case FixedKind::X:
        u = pauli2(PauliAxis::X);
        break;
    case FixedKind::Y:
        u = pauli2(PauliAxis::Y);
        break;
    case FixedKind::Z:
        u = pauli2(PauliAxis::Z);
        break;
    }
    return phase * embed(u, g.qubits[0], n);
}

inline Mat unitary(const Circuit &c, const std::vector<double> &params) {
    const std::size_t n = c.n_qubits();
    Mat u = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const Gate &g : c.flatten()) {
        if (const auto *r = std::get_if<PauliRotation>(&g)) {
            u = embed(rotation(r->axis, params[r->param]), r->qubit, n) * u;
        } else {
            u = fixed_matrix(std::get<FixedGate>(g), n) * u;
        }
    }
    return u;
}

inline Vec state(const Circuit &c, const std::vector<double> &params) {
    return unitary(c, params).col(0);
}

inline Mat word_matrix(const PauliWord &w, std::size_t n) {
    Mat m = Mat::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto &[q, a] : w.factors()) m = embed(pauli2(a), q, n) * m;
    return w.coefficient() * m;
}

inline double expectation(const Vec &psi, const Mat &h) {
    return psi.dot(h * psi).real();
}

/// Central difference of the state, h = 1e-5 unless given.
inline Vec fd_derivative(const Circuit &c, std::vector<double> params, std::size_t i,
                         double h = 1e-5) {
    params[i] += h;
    const Vec plus = state(c, params);
    params[i] -= 2 * h;
    const Vec minus = state(c, params);
    return (plus - minus) / (2 * h);
}

/// Central-difference gradient of <H> through the dense oracle.
inline std::vector<double> fd_gradient(const Circuit &c, std::vector<double> params, const Mat &h,
                                       double step = 1e-5) {
    std::vector<double> g(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double keep = params[i];
        params[i] = keep + step;
        const double ep = expectation(state(c, params), h);
        params[i] = keep - step;
        const double em = expectation(state(c, params), h);
        params[i] = keep;
        g[i] = (ep - em) / (2 * step);
    }
    return g;
}

/**
 * Fubini-Study metric as the Hessian of the fidelity:
 * g = -1/2 d^2 |<psi(t), psi(t + delta)>|^2 at delta = 0.
 * Second-order central differences at step h, Richardson-refined with h/2.
 */
inline Eigen::MatrixXd fidelity_hessian_metric(const Circuit &c, const std::vector<double> &params,
                                               double h = 1e-3) {
    const Vec psi0 = state(c, params);
    const std::size_t d = params.size();
    auto fid = [&](std::size_t i, double si, std::size_t j, double sj) {
        std::vector<double> p = params;
        p[i] += si;
        p[j] += sj;
        return std::norm(psi0.dot(state(c, p)));
    };
    auto hessian = [&](double s) {
        Eigen::MatrixXd hess(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            hess(i, i) = (fid(i, s, i, 0) - 2.0 + fid(i, -s, i, 0)) / (s * s);
            for (std::size_t j = i + 1; j < d; ++j) {
                const double v = (fid(i, s, j, s) - fid(i, s, j, -s) - fid(i, -s, j, s) +
                                  fid(i, -s, j, -s)) /
                                 (4 * s * s);
                hess(i, j) = v;
                hess(j, i) = v;
            }
        }
        return hess;
    };
    const Eigen::MatrixXd coarse = hessian(h);
    const Eigen::MatrixXd fine = hessian(h / 2);
    return -0.5 * (4.0 * fine - coarse) / 3.0;
}

/// Complex QGT from finite-difference derivative states.
inline Mat fd_qgt(const Circuit &c, const std::vector<double> &params) {
    const Vec psi = state(c, params);
    const std::size_t d = params.size();
    Mat jac(psi.size(), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) jac.col(i) = fd_derivative(c, params, i);
    const Vec overlap = jac.adjoint() * psi;
    return jac.adjoint() * jac - overlap * overlap.adjoint();
}

/// Fisher information of p = softmax(W theta + b), in closed form:
/// I = W^T (diag p - p p^T) W.
inline Eigen::MatrixXd softmax_fisher(const Eigen::MatrixXd &w, const Eigen::VectorXd &b,
                                      const Eigen::VectorXd &theta) {
    Eigen::VectorXd z = w * theta + b;
    z.array() -= z.maxCoeff();
    Eigen::VectorXd p = z.array().exp();
    p /= p.sum();
    const Eigen::MatrixXd cov = Eigen::MatrixXd(p.asDiagonal()) - p * p.transpose();
    return w.transpose() * cov * w;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Random layered circuit with fixed entanglers between rotation layers.
/// Every rotation layer touches a random non-empty subset of the qubits.
inline Circuit random_circuit(std::mt19937_64 &rng, std::size_t n, std::size_t layers,
                              std::size_t max_params = 1000) {
    std::uniform_int_distribution<int> axis(0, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::vector<Gate> gates;
    std::size_t p = 0;
    for (std::size_t l = 0; l < layers && p < max_params; ++l) {
        // entangling and basis-changing fixed gates
        for (std::size_t q = 0; q < n; ++q) {
            if (coin(rng)) gates.push_back(gates::h(q));
            if (coin(rng)) gates.push_back(gates::ry_fixed(q, angle(rng)));
        }
        for (std::size_t q = 0; q + 1 < n; ++q) {
            if (coin(rng)) gates.push_back(gates::cz(q, q + 1));
        }
        if (n > 0 && coin(rng)) gates.push_back(gates::sdg(0));
        std::vector<std::size_t> used;
        for (std::size_t q = 0; q < n; ++q) {
            if (coin(rng) || (q + 1 == n && used.empty())) used.push_back(q);
        }
        for (std::size_t q : used) {
            if (p >= max_params) break;
            gates.push_back(gates::rot(static_cast<PauliAxis>(axis(rng)), q, p++));
        }
    }
    if (n > 1) gates.push_back(gates::cz(0, n - 1));
    return layerize(gates, n);
}

inline std::vector<double> random_params(std::mt19937_64 &rng, std::size_t d) {
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::vector<double> out(d);
    for (double &v : out) v = angle(rng);
    return out;
}

inline PauliWord random_word(std::mt19937_64 &rng, std::size_t n, double coeff = 1.0) {
    std::uniform_int_distribution<int> pick(0, 3);
    std::map<std::size_t, PauliAxis> factors;
    for (std::size_t q = 0; q < n; ++q) {
        const int a = pick(rng);
        if (a < 3) factors[q] = static_cast<PauliAxis>(a);
    }
    if (factors.empty()) factors[0] = PauliAxis::Z;
    return PauliWord(coeff, factors);
}

} // namespace qnglab::oracle
