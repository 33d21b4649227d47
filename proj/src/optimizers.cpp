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
#include "qnglab/optimizers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qnglab {

std::string to_string(OptimizerKind kind) {
    switch (kind) {
    case OptimizerKind::GradientDescent:
        return "gd";
    case OptimizerKind::Adam:
        return "adam";
    case OptimizerKind::Qng:
        return "qng";
    case OptimizerKind::NaturalAdam:
        return "natural-adam";
    }
    return "?";
}

OptimizerKind optimizer_kind_from_string(const std::string &text) {
    if (text == "gd" || text == "vanilla") return OptimizerKind::GradientDescent;
    if (text == "adam") return OptimizerKind::Adam;
    if (text == "qng") return OptimizerKind::Qng;
    if (text == "natural-adam" || text == "natural_adam") return OptimizerKind::NaturalAdam;
    throw std::invalid_argument("Unknown optimizer \"" + text + "\"");
}

void OptimizerConfig::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw std::invalid_argument("Step size eta must be positive and finite");
    }
    if (!(regularization.value >= 0.0) || !std::isfinite(regularization.value)) {
        throw std::invalid_argument("Regularization cutoff/lambda must be non-negative");
    }
    if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) || !(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
        throw std::invalid_argument("Adam betas must lie in [0, 1)");
    }
    if (!(adam.epsilon >= 0.0)) {
        throw std::invalid_argument("Adam epsilon must be non-negative");
    }
}

OptimizerState OptimizerState::initial(std::vector<double> params) {
    OptimizerState state;
    state.first_moment.assign(params.size(), 0.0);
    state.second_moment.assign(params.size(), 0.0);
    state.params = std::move(params);
    return state;
}

namespace {

void check_shapes(const OptimizerState &state, std::span<const double> grad) {
    if (grad.size() != state.params.size()) {
        throw std::invalid_argument("Gradient length does not match the parameters");
    }
}

StepResult apply_update(OptimizerState &state, std::vector<double> update) {
    StepResult result;
    for (std::size_t i = 0; i < update.size(); ++i) {
        state.params[i] += update[i];
    }
    ++state.iteration;
    result.new_params = state.params;
    result.update = std::move(update);
    return result;
}

struct BlockSolve {
    std::size_t rank = 0;
    double min_retained = std::numeric_limits<double>::infinity();
    double max_retained = -std::numeric_limits<double>::infinity();

    void retain(double lambda) {
        ++rank;
        min_retained = std::min(min_retained, lambda);
        max_retained = std::max(max_retained, lambda);
    }
};

// Solves one block. `shift` is the Tikhonov lambda (0 for pseudo-inverse).
void solve_block(const Eigen::MatrixXd &block, const Eigen::VectorXd &rhs,
                 const Regularization &reg, Eigen::VectorXd &x, BlockSolve &stats) {
    const Eigen::Index m = block.rows();
    const bool tikhonov = reg.kind == Regularization::Kind::Tikhonov;

    const bool diagonal = block.isDiagonal(0.0);
    Eigen::VectorXd eig;
    Eigen::MatrixXd vecs;
    if (diagonal) {
        eig = block.diagonal();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("Metric eigendecomposition failed");
        }
        eig = solver.eigenvalues();
        vecs = solver.eigenvectors();
    }

    double threshold = 0.0;
    if (!tikhonov) {
        const double top = m > 0 ? eig.maxCoeff() : 0.0;
        threshold = reg.value * std::max(1.0, top);
    }

    Eigen::VectorXd inv(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const double lambda = tikhonov ? eig[k] + reg.value : eig[k];
        if (tikhonov) {
            if (!(lambda > 0.0)) {
                throw NumericalError("Regularized metric is singular");
            }
            inv[k] = 1.0 / lambda;
            stats.retain(lambda);
        } else if (lambda > threshold) {
            inv[k] = 1.0 / lambda;
            stats.retain(lambda);
        } else {
            inv[k] = 0.0;
        }
    }

    if (diagonal) {
        x = Eigen::VectorXd(m);
        for (Eigen::Index k = 0; k < m; ++k) {
            x[k] = inv[k] == 0.0 ? 0.0 : rhs[k] / (tikhonov ? eig[k] + reg.value : eig[k]);
        }
    } else {
        x = vecs * inv.asDiagonal() * (vecs.transpose() * rhs);
    }
}

} // namespace

SolveResult metric_solve(const MetricTensor &metric, std::span<const double> rhs,
                         const Regularization &regularization) {
    const Eigen::Index d = metric.entries.rows();
    if (metric.entries.cols() != d || static_cast<std::size_t>(d) != rhs.size()) {
        throw std::invalid_argument("Metric and right-hand side dimensions differ");
    }
    for (double v : rhs) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("Right-hand side contains NaN or infinity");
        }
    }
    if (!metric.entries.allFinite()) {
        throw NumericalError("Metric contains NaN or infinity");
    }
    const double scale = std::max(1.0, metric.entries.cwiseAbs().maxCoeff());
    if (d > 0 && (metric.entries - metric.entries.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw std::invalid_argument("Metric is not symmetric");
    }

    std::vector<std::vector<std::size_t>> blocks = metric.blocks;
    {
        std::vector<bool> covered(static_cast<std::size_t>(d), false);
        for (const auto &block : blocks) {
            for (std::size_t i : block) {
                if (i >= covered.size() || covered[i]) {
                    throw std::invalid_argument("Metric block indices overlap or exceed d");
                }
                covered[i] = true;
            }
        }
        for (std::size_t i = 0; i < covered.size(); ++i) {
            if (!covered[i]) {
                blocks.push_back({i});
            }
        }
    }

    SolveResult result;
    result.x.assign(rhs.size(), 0.0);
    BlockSolve stats;
    for (const auto &idx : blocks) {
        const auto m = static_cast<Eigen::Index>(idx.size());
        Eigen::MatrixXd block(m, m);
        Eigen::VectorXd r(m);
        for (Eigen::Index a = 0; a < m; ++a) {
            r[a] = rhs[idx[static_cast<std::size_t>(a)]];
            for (Eigen::Index b = 0; b < m; ++b) {
                block(a, b) = metric.entries(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(a)]),
                                             static_cast<Eigen::Index>(idx[static_cast<std::size_t>(b)]));
            }
        }
        Eigen::VectorXd x;
        solve_block(block, r, regularization, x, stats);
        for (Eigen::Index a = 0; a < m; ++a) {
            result.x[idx[static_cast<std::size_t>(a)]] = x[a];
        }
    }
    result.diagnostics.rank = stats.rank;
    result.diagnostics.min_retained = stats.rank ? stats.min_retained : 0.0;
    result.diagnostics.max_retained = stats.rank ? stats.max_retained : 0.0;
    return result;
}

StepResult gd_step(OptimizerState &state, std::span<const double> grad, double eta) {
    check_shapes(state, grad);
    std::vector<double> update(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) {
        update[i] = -eta * grad[i];
    }
    return apply_update(state, std::move(update));
}

StepResult qng_step(OptimizerState &state, std::span<const double> grad,
                    const MetricTensor &metric, const OptimizerConfig &config) {
    check_shapes(state, grad);
    std::vector<double> rhs(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) {
        rhs[i] = -config.eta * grad[i];
    }
    SolveResult solved = metric_solve(metric, rhs, config.regularization);
    StepResult result = apply_update(state, std::move(solved.x));
    result.diagnostics = solved.diagnostics;
    return result;
}

StepResult adam_step(OptimizerState &state, std::span<const double> grad,
                     const OptimizerConfig &config) {
    check_shapes(state, grad);
    const auto &[beta1, beta2, epsilon] = config.adam;
    const double t = static_cast<double>(state.iteration + 1);
    const double correction1 = 1.0 - std::pow(beta1, t);
    const double correction2 = 1.0 - std::pow(beta2, t);
    std::vector<double> update(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) {
        state.first_moment[i] = beta1 * state.first_moment[i] + (1.0 - beta1) * grad[i];
        state.second_moment[i] =
            beta2 * state.second_moment[i] + (1.0 - beta2) * grad[i] * grad[i];
        const double m_hat = state.first_moment[i] / correction1;
        const double v_hat = state.second_moment[i] / correction2;
        update[i] = -config.eta * m_hat / (std::sqrt(v_hat) + epsilon);
    }
    return apply_update(state, std::move(update));
}

StepResult natural_adam_step(OptimizerState &state, std::span<const double> grad,
                             const MetricTensor &metric, const OptimizerConfig &config) {
    check_shapes(state, grad);
    SolveResult natural = metric_solve(metric, grad, config.regularization);
    StepResult result = adam_step(state, natural.x, config);
    result.diagnostics = natural.diagnostics;
    return result;
}

std::uint64_t evaluations_per_step(const Objective &obj, const OptimizerConfig &config) {
    const std::uint64_t gradient = 2 * obj.circuit.param_count() * obj.measurement_groups().size();
    const bool quantum_metric = uses_metric(config.kind) && config.metric_mode != MetricMode::Full;
    return gradient + (quantum_metric ? obj.circuit.num_layers() : 0);
}

std::vector<RunRecord> run_optimization(const Objective &obj, std::span<const double> init,
                                        const OptimizerConfig &config, Estimator &estimator,
                                        const RunOptions &options) {
    config.validate();
    if (init.size() != obj.circuit.param_count()) {
        throw std::invalid_argument("Initial parameters do not match the circuit");
    }
    using clock = std::chrono::steady_clock;

    OptimizerState state = OptimizerState::initial({init.begin(), init.end()});
    std::vector<RunRecord> records;
    records.reserve(options.max_iters + 1);
    std::uint64_t evals = 0;
    double wall_ms = 0.0;

    for (std::size_t t = 0;; ++t) {
        RunRecord row;
        row.iteration = t;
        row.energy = exact_energy(obj, state.params);
        row.loss = obj.loss_scale() * row.energy;
        row.qevals_cum = evals;
        row.wall_ms = options.record_wall_time ? wall_ms : 0.0;
        if (!std::isfinite(row.energy)) {
            row.grad_norm = std::numeric_limits<double>::quiet_NaN();
            row.aborted = true;
            records.push_back(row);
            break;
        }

        if (t == options.max_iters) {
            // Reported only; not charged to the run.
            ShotBudget report = estimator.budget();
            if (!report.is_analytic()) {
                report.seed = options.report_seed;
            }
            Estimator side(report);
            row.grad_norm = parameter_shift_gradient(obj, state.params, side).norm();
            records.push_back(row);
            break;
        }

        const auto start = clock::now();
        const std::uint64_t before = estimator.evaluations();
        const GradientVector grad = parameter_shift_gradient(obj, state.params, estimator);
        row.grad_norm = grad.norm();

        StepResult step;
        switch (config.kind) {
        case OptimizerKind::GradientDescent:
            step = gd_step(state, grad.values, config.eta);
            break;
        case OptimizerKind::Adam:
            step = adam_step(state, grad.values, config);
            break;
        case OptimizerKind::Qng: {
            const MetricTensor g = compute_metric(config.metric_mode, obj.circuit, state.params, estimator);
            step = qng_step(state, grad.values, g, config);
            break;
        }
        case OptimizerKind::NaturalAdam: {
            const MetricTensor g = compute_metric(config.metric_mode, obj.circuit, state.params, estimator);
            step = natural_adam_step(state, grad.values, g, config);
            break;
        }
        }
        const std::chrono::duration<double, std::milli> elapsed = clock::now() - start;
        evals += estimator.evaluations() - before;
        wall_ms += elapsed.count();
        row.diagnostics = step.diagnostics;
        records.push_back(row);
    }
    return records;
}

} // namespace qnglab
