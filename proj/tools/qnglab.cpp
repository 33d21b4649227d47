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
// Command-line front end for the experiment harness.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnglab/circuit_json.hpp"
#include "qnglab/harness.hpp"

namespace {

using namespace qnglab;
using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

ExperimentConfig config_or_default(const std::string &path) {
    if (path.empty()) {
        ExperimentConfig c;
        c.validate();
        return c;
    }
    return load_config(path);
}

// Writes to config.output, or stdout when no output path is set. Returns the
// numerical-failure exit code if any trace was cut short.
int finish(const std::vector<Trace> &traces, const ExperimentConfig &config) {
    if (config.output.empty()) {
        std::cout << (config.format == ResultFormat::Json ? format_json(traces) : format_csv(traces));
    } else {
        emit_results(traces, config.output, config.format);
    }
    for (const auto &t : traces) {
        if (!t.records.empty() && t.records.back().aborted) {
            std::cerr << "qnglab: run " << t.run_id << " stopped on a non-finite value\n";
            return kExitNumerical;
        }
    }
    return 0;
}

std::vector<double> load_params(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("Cannot open parameter file " + path);
    json doc;
    try {
        in >> doc;
        if (doc.is_object()) doc = doc.at("params");
        return doc.get<std::vector<double>>();
    } catch (const json::exception &e) {
        throw ConfigError("Parameter file " + path + ": " + e.what());
    }
}

json matrix_json(const Eigen::MatrixXd &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

void apply_vary(ExperimentConfig &c, const std::string &key, const std::string &value) {
    json v;
    if (key == "shots" && value == "analytic") {
        v = value;
    } else {
        try {
            v = json::parse(value);
        } catch (const json::exception &) {
            v = value;
        }
    }
    json doc = c.to_json();
    if (!doc.contains(key) || key == "output" || key == "format") {
        throw ConfigError("Cannot vary \"" + key + "\"");
    }
    doc[key] = v;
    c = ExperimentConfig::from_json(doc);
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum natural gradient experiments on a statevector simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string optimizers = "gd,adam,qng-block,qng-diag";
    std::string vary;
    std::string circuit_path;
    std::string params_path;
    std::string mode = "full";
    bool complex_tensor = false;

    auto *run_cmd = app.add_subcommand("run", "Run one experiment");
    run_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();

    auto *compare_cmd = app.add_subcommand("compare", "Run several optimizers on one problem");
    compare_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
    compare_cmd->add_option("--optimizers", optimizers, "Comma-separated optimizer labels");

    auto *metric_cmd = app.add_subcommand("metric", "Print the metric tensor of a circuit");
    metric_cmd->add_option("--circuit", circuit_path, "Circuit (JSON)")->required();
    metric_cmd->add_option("--params", params_path, "Parameter list (JSON array)")->required();
    metric_cmd->add_option("--mode", mode, "full|block|diag");
    metric_cmd->add_flag("--complex", complex_tensor, "Print the full complex tensor");

    auto *sweep_cmd = app.add_subcommand("sweep", "Repeat a comparison over one varied field");
    sweep_cmd->add_option("--config", config_path, "Experiment config (JSON)");
    sweep_cmd->add_option("--vary", vary, "field=v1,v2,...")->required();
    sweep_cmd->add_option("--optimizers", optimizers, "Comma-separated optimizer labels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run_cmd) {
            const ExperimentConfig config = load_config(config_path);
            return finish({run_experiment(config)}, config);
        }
        if (*compare_cmd || *sweep_cmd) {
            const ExperimentConfig base = config_or_default(config_path);
            const auto labels = split_list(optimizers);
            if (labels.empty()) throw ConfigError("No optimizers given");
            std::vector<ExperimentConfig> configs;
            if (*sweep_cmd) {
                const auto eq = vary.find('=');
                if (eq == std::string::npos) throw ConfigError("--vary expects field=v1,v2,...");
                const std::string key = vary.substr(0, eq);
                for (const auto &value : split_list(vary.substr(eq + 1))) {
                    ExperimentConfig c = base;
                    apply_vary(c, key, value);
                    configs.push_back(c);
                }
                if (configs.empty()) throw ConfigError("--vary lists no values");
            } else {
                configs.push_back(base);
            }
            std::vector<Trace> traces;
            for (const auto &c : configs) {
                auto runs = compare_optimizers(c, labels);
                for (const auto &label : labels) traces.push_back(std::move(runs.at(label)));
            }
            return finish(traces, base);
        }
        if (*metric_cmd) {
            const Circuit circuit = load_circuit(circuit_path);
            const std::vector<double> params = load_params(params_path);
            if (params.size() != circuit.param_count()) {
                throw ConfigError("Circuit has " + std::to_string(circuit.param_count()) +
                                  " parameters but the file lists " + std::to_string(params.size()));
            }
            MetricMode m;
            try {
                m = metric_mode_from_string(mode);
            } catch (const std::invalid_argument &e) {
                throw ConfigError(e.what());
            }
            json out = {{"mode", to_string(m)}, {"d", circuit.param_count()}};
            if (complex_tensor) {
                if (m != MetricMode::Full) throw ConfigError("--complex needs --mode full");
                const QGTensor g = qgt_exact(circuit, params);
                out["entries"] = {{"re", matrix_json(g.entries.real())},
                                  {"im", matrix_json(g.entries.imag())}};
            } else {
                Estimator estimator(ShotBudget::analytic());
                out["entries"] = matrix_json(compute_metric(m, circuit, params, estimator).entries);
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const ConfigError &e) {
        std::cerr << "qnglab: config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericalError &e) {
        std::cerr << "qnglab: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::invalid_argument &e) {
        std::cerr << "qnglab: invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "qnglab: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
