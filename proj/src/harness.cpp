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
#include "qnglab/harness.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>

#include "qnglab/rng.hpp"

namespace qnglab {

using nlohmann::json;

namespace {

const std::set<std::string> kConfigKeys = {
    "n_qubits", "layers",     "optimizer",  "metric_mode", "eta",    "shots",
    "seed",     "max_iters",  "loss_convention", "regularization", "adam", "output",
    "format",   "record_wall_time", "workers"};

template <typename T> T read_number(const json &doc, const char *key, T fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    const json &v = doc[key];
    if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) {
            throw ConfigError(std::string("\"") + key + "\" must be a number");
        }
    } else {
        if (!v.is_number_integer() || v.get<long long>() < 0) {
            throw ConfigError(std::string("\"") + key + "\" must be a non-negative integer");
        }
    }
    return v.get<T>();
}

std::string read_string(const json &doc, const char *key, const std::string &fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    if (!doc[key].is_string()) {
        throw ConfigError(std::string("\"") + key + "\" must be a string");
    }
    return doc[key].get<std::string>();
}

} // namespace

void ExperimentConfig::validate() const {
    if (n_qubits < 2 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must lie in [2, " + std::to_string(kMaxQubits) + "]");
    }
    if (layers < 1) {
        throw ConfigError("layers must be at least 1");
    }
    if (shots && *shots < 1) {
        throw ConfigError("shots must be positive");
    }
    if (workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    try {
        optimizer_config().validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

ShotBudget ExperimentConfig::budget() const {
    return shots ? ShotBudget::sampled(*shots, seed) : ShotBudget::analytic();
}

OptimizerConfig ExperimentConfig::optimizer_config() const {
    OptimizerConfig c;
    c.kind = optimizer;
    c.eta = eta;
    c.metric_mode = metric_mode;
    c.regularization = regularization;
    c.adam = adam;
    return c;
}

std::string ExperimentConfig::optimizer_label() const {
    std::string label = to_string(optimizer);
    if (uses_metric(optimizer)) {
        label += "-" + to_string(metric_mode);
    }
    return label;
}

void apply_optimizer_label(ExperimentConfig &config, const std::string &label) {
    for (const char *mode : {"full", "block", "diag"}) {
        const std::string suffix = std::string("-") + mode;
        if (label.size() > suffix.size() &&
            label.compare(label.size() - suffix.size(), suffix.size(), suffix) == 0) {
            const std::string base = label.substr(0, label.size() - suffix.size());
            try {
                config.optimizer = optimizer_kind_from_string(base);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(e.what());
            }
            if (!uses_metric(config.optimizer)) {
                throw ConfigError("Optimizer \"" + base + "\" takes no metric mode");
            }
            config.metric_mode = metric_mode_from_string(mode);
            return;
        }
    }
    try {
        config.optimizer = optimizer_kind_from_string(label);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

ExperimentConfig ExperimentConfig::from_json(const json &doc) {
    if (!doc.is_object()) {
        throw ConfigError("Experiment config must be a JSON object");
    }
    for (const auto &item : doc.items()) {
        if (!kConfigKeys.contains(item.key())) {
            throw ConfigError("Unknown config key \"" + item.key() + "\"");
        }
    }
    ExperimentConfig c;
    try {
        c.n_qubits = read_number<std::size_t>(doc, "n_qubits", c.n_qubits);
        c.layers = read_number<std::size_t>(doc, "layers", c.layers);
        c.metric_mode = metric_mode_from_string(read_string(doc, "metric_mode", to_string(c.metric_mode)));
        apply_optimizer_label(c, read_string(doc, "optimizer", c.optimizer_label()));
        c.eta = read_number<double>(doc, "eta", c.eta);
        if (doc.contains("shots")) {
            const json &s = doc["shots"];
            if (s.is_string() && s.get<std::string>() == "analytic") {
                c.shots.reset();
            } else if (s.is_number_integer() && s.get<long long>() > 0) {
                c.shots = s.get<std::size_t>();
            } else {
                throw ConfigError("\"shots\" must be \"analytic\" or a positive integer");
            }
        }
        c.seed = read_number<std::uint64_t>(doc, "seed", c.seed);
        c.max_iters = read_number<std::size_t>(doc, "max_iters", c.max_iters);
        c.loss_convention = loss_convention_from_string(
            read_string(doc, "loss_convention", to_string(c.loss_convention)));
        if (doc.contains("regularization")) {
            const json &r = doc["regularization"];
            const std::string kind = read_string(r, "kind", "pinv");
            if (kind == "pinv" || kind == "pseudo-inverse") {
                c.regularization = Regularization::pseudo_inverse(read_number<double>(r, "value", 1e-10));
            } else if (kind == "tikhonov") {
                c.regularization = Regularization::tikhonov(read_number<double>(r, "value", 1e-3));
            } else {
                throw ConfigError("Unknown regularization \"" + kind + "\"");
            }
        }
        if (doc.contains("adam")) {
            const json &a = doc["adam"];
            c.adam.beta1 = read_number<double>(a, "beta1", c.adam.beta1);
            c.adam.beta2 = read_number<double>(a, "beta2", c.adam.beta2);
            c.adam.epsilon = read_number<double>(a, "epsilon", c.adam.epsilon);
        }
        c.output = read_string(doc, "output", c.output);
        const std::string format = read_string(doc, "format", "csv");
        if (format == "csv") {
            c.format = ResultFormat::Csv;
        } else if (format == "json") {
            c.format = ResultFormat::Json;
        } else {
            throw ConfigError("\"format\" must be csv or json");
        }
        if (doc.contains("record_wall_time")) {
            if (!doc["record_wall_time"].is_boolean()) {
                throw ConfigError("\"record_wall_time\" must be a boolean");
            }
            c.record_wall_time = doc["record_wall_time"].get<bool>();
        }
        c.workers = read_number<std::size_t>(doc, "workers", c.workers);
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
    c.validate();
    return c;
}

json ExperimentConfig::to_json() const {
    json doc = {
        {"n_qubits", n_qubits},
        {"layers", layers},
        {"optimizer", to_string(optimizer)},
        {"metric_mode", to_string(metric_mode)},
        {"eta", eta},
        {"seed", seed},
        {"max_iters", max_iters},
        {"loss_convention", to_string(loss_convention)},
        {"regularization",
         {{"kind", regularization.kind == Regularization::Kind::Tikhonov ? "tikhonov" : "pinv"},
          {"value", regularization.value}}},
        {"adam", {{"beta1", adam.beta1}, {"beta2", adam.beta2}, {"epsilon", adam.epsilon}}},
        {"output", output},
        {"format", format == ResultFormat::Json ? "json" : "csv"},
        {"record_wall_time", record_wall_time},
        {"workers", workers},
    };
    if (shots) {
        doc["shots"] = *shots;
    } else {
        doc["shots"] = "analytic";
    }
    return doc;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("Cannot open config file " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception &e) {
        throw ConfigError("Config file " + path.string() + ": " + e.what());
    }
    return ExperimentConfig::from_json(doc);
}

std::vector<double> initial_parameters(std::size_t d, std::uint64_t seed) {
    CounterRng rng(seed, "initial-angles");
    std::vector<double> params(d);
    for (double &p : params) {
        p = 2.0 * std::numbers::pi * rng.uniform();
    }
    return params;
}

Trace run_experiment(const ExperimentConfig &config) {
    config.validate();
    const BenchmarkProblem problem = build_benchmark_circuit(config.n_qubits, config.layers, config.seed);
    const Objective objective(problem.circuit, problem.observable, config.loss_convention);
    const std::vector<double> init = initial_parameters(problem.circuit.param_count(), config.seed);

    Estimator estimator(config.budget());
    RunOptions options;
    options.max_iters = config.max_iters;
    options.record_wall_time = config.record_wall_time;
    options.report_seed = mix64(config.seed ^ hash_tag("final-gradient"));

    Trace trace;
    trace.optimizer = uses_metric(config.optimizer) ? to_string(config.optimizer) : config.optimizer_label();
    trace.metric_mode = uses_metric(config.optimizer) ? to_string(config.metric_mode) : "none";
    trace.n_qubits = config.n_qubits;
    trace.layers = config.layers;
    trace.eta = config.eta;
    trace.shots = config.budget().label();
    trace.seed = config.seed;
    trace.run_id = config.optimizer_label() + "_n" + std::to_string(config.n_qubits) + "_L" +
                   std::to_string(config.layers) + "_s" + std::to_string(config.seed) + "_" +
                   trace.shots;
    trace.records = run_optimization(objective, init, config.optimizer_config(), estimator, options);
    return trace;
}

std::map<std::string, Trace> compare_optimizers(const ExperimentConfig &base,
                                                std::span<const std::string> labels) {
    std::vector<ExperimentConfig> configs;
    for (const auto &label : labels) {
        ExperimentConfig c = base;
        apply_optimizer_label(c, label);
        c.validate();
        configs.push_back(std::move(c));
    }
    std::map<std::string, Trace> out;
    const std::size_t workers = std::max<std::size_t>(1, base.workers);
    for (std::size_t start = 0; start < configs.size(); start += workers) {
        std::vector<std::future<Trace>> batch;
        const std::size_t stop = std::min(configs.size(), start + workers);
        for (std::size_t k = start; k < stop; ++k) {
            batch.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred,
                                       [&c = configs[k]] { return run_experiment(c); }));
        }
        for (std::size_t k = start; k < stop; ++k) {
            out.emplace(labels[k], batch[k - start].get());
        }
    }
    return out;
}

std::optional<std::size_t> iterations_to_reach(const Trace &trace, double target) {
    for (const auto &row : trace.records) {
        if (row.energy <= target) {
            return row.iteration;
        }
    }
    return std::nullopt;
}

ImaginaryTimeReference imaginary_time_reference(const Eigen::MatrixXcd &hamiltonian,
                                                const StateVector &psi0, double tau_max,
                                                double dtau) {
    const auto dim = static_cast<Eigen::Index>(psi0.dim());
    if (hamiltonian.rows() != dim || hamiltonian.cols() != dim) {
        throw std::invalid_argument("Hamiltonian and state dimensions differ");
    }
    if (psi0.n_qubits() > 10) {
        throw std::invalid_argument("Dense imaginary-time reference is limited to 10 qubits");
    }
    const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
    if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("Hamiltonian is not Hermitian");
    }
    if (!(dtau > 0.0) || !(tau_max >= 0.0)) {
        throw std::invalid_argument("Need dtau > 0 and tau_max >= 0");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
    const Eigen::VectorXd energies = solver.eigenvalues();
    const Eigen::MatrixXcd &basis = solver.eigenvectors();
    const Eigen::VectorXcd coeffs = basis.adjoint() * psi0.amplitudes();
    const double ground = energies.minCoeff();

    ImaginaryTimeReference ref;
    ref.dtau = dtau;
    const auto steps = static_cast<std::size_t>(std::floor(tau_max / dtau + 1e-9));
    for (std::size_t k = 0; k <= steps; ++k) {
        const double tau = static_cast<double>(k) * dtau;
        Eigen::VectorXcd weighted = coeffs;
        for (Eigen::Index e = 0; e < dim; ++e) {
            weighted[e] *= std::exp(-(energies[e] - ground) * tau);
        }
        Eigen::VectorXcd amps = basis * weighted;
        amps.normalize();
        ref.taus.push_back(tau);
        ref.states.emplace_back(psi0.n_qubits(), std::move(amps));
    }
    return ref;
}

ImaginaryTimeReference imaginary_time_reference(std::span<const PauliWord> hamiltonian,
                                                const StateVector &psi0, double tau_max,
                                                double dtau) {
    return imaginary_time_reference(to_matrix(hamiltonian, psi0.n_qubits()), psi0, tau_max, dtau);
}

} // namespace qnglab
