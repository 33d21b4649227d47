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
#include "qnglab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qnglab {

std::string to_string(MetricMode mode) {
    switch (mode) {
    case MetricMode::Full:
        return "full";
    case MetricMode::BlockDiagonal:
        return "block";
    case MetricMode::Diagonal:
        return "diag";
    }
    return "?";
}

MetricMode metric_mode_from_string(const std::string &text) {
    if (text == "full") return MetricMode::Full;
    if (text == "block" || text == "block-diagonal" || text == "block_diagonal")
        return MetricMode::BlockDiagonal;
    if (text == "diag" || text == "diagonal") return MetricMode::Diagonal;
    throw std::invalid_argument("Unknown metric mode \"" + text + "\"");
}

MetricTensor MetricTensor::identity(std::size_t d) {
    return full(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d),
                                          static_cast<Eigen::Index>(d)));
}

MetricTensor MetricTensor::full(Eigen::MatrixXd entries) {
    MetricTensor g;
    std::vector<std::size_t> all(static_cast<std::size_t>(entries.rows()));
    std::iota(all.begin(), all.end(), std::size_t{0});
    g.entries = std::move(entries);
    g.mode = MetricMode::Full;
    if (!all.empty()) {
        g.blocks.push_back(std::move(all));
    }
    return g;
}

QGTensor qgt_from_states(const StateVector &psi, std::span<const StateVector> derivatives) {
    const auto d = static_cast<Eigen::Index>(derivatives.size());
    const auto dim = static_cast<Eigen::Index>(psi.dim());
    Eigen::MatrixXcd jac(dim, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        if (derivatives[static_cast<std::size_t>(i)].dim() != psi.dim()) {
            throw std::invalid_argument("Derivative state dimension mismatch");
        }
        jac.col(i) = derivatives[static_cast<std::size_t>(i)].amplitudes();
    }
    // overlap_i = <d_i psi, psi>
    const Eigen::VectorXcd overlap = jac.adjoint() * psi.amplitudes();
    QGTensor g;
    g.entries = jac.adjoint() * jac - overlap * overlap.adjoint();
    return g;
}

QGTensor qgt_exact(const Circuit &circuit, std::span<const double> params) {
    const StateVector psi = run(circuit, params);
    const auto derivs = derivative_states(circuit, params);
    return qgt_from_states(psi, derivs);
}

MetricTensor fubini_study_metric(const Circuit &circuit, std::span<const double> params) {
    const QGTensor g = qgt_exact(circuit, params);
    Eigen::MatrixXd re = g.entries.real();
    return MetricTensor::full(0.5 * (re + re.transpose()));
}

std::vector<double> berry_connection(const Circuit &circuit, std::span<const double> params) {
    const StateVector psi = run(circuit, params);
    std::vector<double> a(circuit.param_count());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto overlap = psi.inner(derivative_state(circuit, params, i));
        // i <psi, d_i psi> is real because Re <psi, d_i psi> = 0.
        a[i] = (std::complex<double>(0.0, 1.0) * overlap).real();
    }
    return a;
}

namespace {

MetricTensor layered_metric(const Circuit &circuit, std::span<const double> params,
                            Estimator &estimator, bool include_pairs) {
    const auto d = static_cast<Eigen::Index>(circuit.param_count());
    MetricTensor g;
    g.entries = Eigen::MatrixXd::Zero(d, d);
    g.mode = include_pairs ? MetricMode::BlockDiagonal : MetricMode::Diagonal;
    const std::uint64_t before = estimator.evaluations();

    for (std::size_t l = 1; l <= circuit.num_layers(); ++l) {
        const std::vector<std::size_t> idx = circuit.layer_params(l);
        const auto &rotations = circuit.layer(l).rotations;
        const std::size_t m = rotations.size();

        std::vector<PauliWord> words;
        words.reserve(include_pairs ? m * (m + 1) / 2 : m);
        for (const auto &rot : rotations) {
            words.push_back(PauliWord::single(rot.qubit, rot.axis));
        }
        if (include_pairs) {
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t j = i + 1; j < m; ++j) {
                    words.push_back(words[i] * words[j]);
                }
            }
        }

        const StateVector psi_l = run(subcircuit_prefix(circuit, l), params);
        const std::vector<double> ev = estimator.measure(psi_l, words);

        // Generators are P/2, so every covariance carries a factor 1/4.
        std::size_t pair = m;
        for (std::size_t i = 0; i < m; ++i) {
            const auto ii = static_cast<Eigen::Index>(idx[i]);
            g.entries(ii, ii) = 0.25 * (1.0 - ev[i] * ev[i]);
            if (!include_pairs) {
                continue;
            }
            for (std::size_t j = i + 1; j < m; ++j, ++pair) {
                const auto jj = static_cast<Eigen::Index>(idx[j]);
                const double cov = 0.25 * (ev[pair] - ev[i] * ev[j]);
                g.entries(ii, jj) = cov;
                g.entries(jj, ii) = cov;
            }
        }

        if (include_pairs) {
            g.blocks.push_back(idx);
        } else {
            for (std::size_t p : idx) {
                g.blocks.push_back({p});
            }
        }
    }
    g.quantum_evals = estimator.evaluations() - before;
    return g;
}

} // namespace

MetricTensor qgt_block_diagonal(const Circuit &circuit, std::span<const double> params,
                                Estimator &estimator) {
    return layered_metric(circuit, params, estimator, true);
}

MetricTensor qgt_diagonal(const Circuit &circuit, std::span<const double> params,
                          Estimator &estimator) {
    return layered_metric(circuit, params, estimator, false);
}

MetricTensor compute_metric(MetricMode mode, const Circuit &circuit,
                            std::span<const double> params, Estimator &estimator) {
    switch (mode) {
    case MetricMode::Full:
        return fubini_study_metric(circuit, params);
    case MetricMode::BlockDiagonal:
        return qgt_block_diagonal(circuit, params, estimator);
    case MetricMode::Diagonal:
        return qgt_diagonal(circuit, params, estimator);
    }
    throw std::invalid_argument("Unknown metric mode");
}

std::vector<double> ProbFamily::operator()(std::span<const double> params) const {
    if (params.size() != param_count) {
        throw std::invalid_argument("Family expects " + std::to_string(param_count) +
                                    " parameters");
    }
    std::vector<double> p = evaluate(params);
    if (p.size() != outcome_count) {
        throw std::invalid_argument("Family returned the wrong number of outcomes");
    }
    double total = 0.0;
    for (double v : p) {
        if (!(v > 0.0)) {
            throw std::domain_error("Family probabilities must be strictly positive");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::domain_error("Family probabilities do not sum to one");
    }
    return p;
}

ProbFamily softmax_family(std::size_t param_count, std::size_t outcome_count,
                          std::function<std::vector<double>(std::span<const double>)> logits_of) {
    ProbFamily family;
    family.param_count = param_count;
    family.outcome_count = outcome_count;
    family.evaluate = [logits_of = std::move(logits_of)](std::span<const double> theta) {
        std::vector<double> z = logits_of(theta);
        const double top = *std::max_element(z.begin(), z.end());
        double total = 0.0;
        for (double &v : z) {
            v = std::exp(v - top);
            total += v;
        }
        for (double &v : z) {
            v /= total;
        }
        return z;
    };
    return family;
}

MetricTensor fisher_information(const ProbFamily &family, std::span<const double> params) {
    constexpr double kStep = 1e-6;
    constexpr double kFloor = 1e-12;
    const std::size_t d = family.param_count;
    const std::size_t n = family.outcome_count;

    const std::vector<double> p = family(params);
    auto check_floor = [](const std::vector<double> &probs) {
        for (double v : probs) {
            if (v < kFloor) {
                throw std::domain_error("Probability below 1e-12; log-derivative unreliable");
            }
        }
    };
    check_floor(p);

    Eigen::MatrixXd score(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    std::vector<double> shifted(params.begin(), params.end());
    for (std::size_t i = 0; i < d; ++i) {
        shifted[i] = params[i] + kStep;
        const auto plus = family(shifted);
        shifted[i] = params[i] - kStep;
        const auto minus = family(shifted);
        shifted[i] = params[i];
        check_floor(plus);
        check_floor(minus);
        for (std::size_t x = 0; x < n; ++x) {
            score(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(i)) =
                (std::log(plus[x]) - std::log(minus[x])) / (2.0 * kStep);
        }
    }
    Eigen::VectorXd weights = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(n));
    Eigen::MatrixXd info = score.transpose() * weights.asDiagonal() * score;
    return MetricTensor::full(0.5 * (info + info.transpose()));
}

StateVector amplitude_embed(const ProbFamily &family, std::span<const double> params) {
    std::size_t n = 1;
    while ((std::size_t{1} << n) < family.outcome_count) {
        ++n;
    }
    return amplitude_embed(family, params, n);
}

StateVector amplitude_embed(const ProbFamily &family, std::span<const double> params,
                            std::size_t n_qubits) {
    if (n_qubits > kMaxQubits || family.outcome_count > (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("Outcome count exceeds the register dimension");
    }
    const std::vector<double> p = family(params);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
    for (std::size_t x = 0; x < p.size(); ++x) {
        amps[static_cast<Eigen::Index>(x)] = std::sqrt(p[x]);
    }
    return StateVector(n_qubits, std::move(amps));
}

double fubini_study_distance(const StateVector &a, const StateVector &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("States have different dimensions");
    }
    if (std::abs(a.norm() - 1.0) > 1e-8 || std::abs(b.norm() - 1.0) > 1e-8) {
        throw std::invalid_argument("Fubini-Study distance needs unit vectors");
    }
    return std::acos(std::clamp(std::abs(a.inner(b)), 0.0, 1.0));
}

double fisher_rao_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("Distributions have different lengths");
    }
    double sp = 0.0;
    double sq = 0.0;
    double bc = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (p[x] < 0.0 || q[x] < 0.0) {
            throw std::invalid_argument("Probabilities must be non-negative");
        }
        sp += p[x];
        sq += q[x];
        bc += std::sqrt(p[x] * q[x]);
    }
    if (std::abs(sp - 1.0) > 1e-12 || std::abs(sq - 1.0) > 1e-12) {
        throw std::invalid_argument("Distributions must sum to one");
    }
    return std::acos(std::clamp(bc, -1.0, 1.0));
}

} // namespace qnglab
