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
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "qnglab/harness.hpp"

namespace qnglab {

using nlohmann::json;

namespace {

constexpr std::size_t kColumnCount = std::size(kResultColumns);

// Shortest representation that reads back to the same double.
std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

double parse_double(const std::string &s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("Bad numeric field \"" + s + "\"");
    }
    return v;
}

template <typename T> T parse_unsigned(const std::string &s) {
    T v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw std::invalid_argument("Bad integer field \"" + s + "\"");
    }
    return v;
}

std::vector<std::string> row_fields(const Trace &t, const RunRecord &r) {
    return {t.run_id,
            t.optimizer,
            t.metric_mode,
            std::to_string(t.n_qubits),
            std::to_string(t.layers),
            format_double(t.eta),
            t.shots,
            std::to_string(t.seed),
            std::to_string(r.iteration),
            format_double(r.loss),
            format_double(r.energy),
            format_double(r.grad_norm),
            std::to_string(r.qevals_cum),
            format_double(r.wall_ms)};
}

// Groups rows into traces by run_id, keeping first-appearance order.
std::vector<Trace> collect(const std::vector<std::vector<std::string>> &rows) {
    std::vector<Trace> traces;
    std::unordered_map<std::string, std::size_t> where;
    for (const auto &f : rows) {
        if (f.size() != kColumnCount) {
            throw std::invalid_argument("Result row has " + std::to_string(f.size()) +
                                        " fields, expected " + std::to_string(kColumnCount));
        }
        auto [it, fresh] = where.emplace(f[0], traces.size());
        if (fresh) {
            Trace t;
            t.run_id = f[0];
            t.optimizer = f[1];
            t.metric_mode = f[2];
            t.n_qubits = parse_unsigned<std::size_t>(f[3]);
            t.layers = parse_unsigned<std::size_t>(f[4]);
            t.eta = parse_double(f[5]);
            t.shots = f[6];
            t.seed = parse_unsigned<std::uint64_t>(f[7]);
            traces.push_back(std::move(t));
        }
        RunRecord r;
        r.iteration = parse_unsigned<std::size_t>(f[8]);
        r.loss = parse_double(f[9]);
        r.energy = parse_double(f[10]);
        r.grad_norm = parse_double(f[11]);
        r.qevals_cum = parse_unsigned<std::uint64_t>(f[12]);
        r.wall_ms = parse_double(f[13]);
        r.aborted = !std::isfinite(r.energy);
        traces[it->second].records.push_back(r);
    }
    return traces;
}

} // namespace

std::string format_csv(std::span<const Trace> traces) {
    std::string out;
    for (std::size_t c = 0; c < kColumnCount; ++c) {
        out += kResultColumns[c];
        out += c + 1 < kColumnCount ? ',' : '\n';
    }
    for (const auto &t : traces) {
        if (t.run_id.find_first_of(",\n") != std::string::npos) {
            throw std::invalid_argument("run_id may not contain commas or newlines");
        }
        for (const auto &r : t.records) {
            const auto fields = row_fields(t, r);
            for (std::size_t c = 0; c < kColumnCount; ++c) {
                out += fields[c];
                out += c + 1 < kColumnCount ? ',' : '\n';
            }
        }
    }
    return out;
}

std::vector<Trace> parse_csv(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        return {};
    }
    std::vector<std::vector<std::string>> rows;
    bool header = true;
    do {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (header) {
            header = false;
            if (fields.size() != kColumnCount ||
                !std::equal(fields.begin(), fields.end(), std::begin(kResultColumns))) {
                throw std::invalid_argument("Unexpected CSV header");
            }
            continue;
        }
        rows.push_back(std::move(fields));
    } while (std::getline(in, line));
    return collect(rows);
}

std::string format_json(std::span<const Trace> traces) {
    // Written by hand so numbers use the same round-trip formatting as CSV.
    std::string out = "[";
    bool first = true;
    for (const auto &t : traces) {
        for (const auto &r : t.records) {
            const auto fields = row_fields(t, r);
            out += first ? "\n  {" : ",\n  {";
            first = false;
            for (std::size_t c = 0; c < kColumnCount; ++c) {
                out += json(kResultColumns[c]).dump() + ": ";
                const std::string &v = fields[c];
                const bool text = c == 0 || c == 1 || c == 2 || c == 6;
                if (text) {
                    out += json(v).dump();
                } else if (v == "nan" || v == "inf" || v == "-inf") {
                    out += "null";
                } else {
                    out += v;
                }
                if (c + 1 < kColumnCount) out += ", ";
            }
            out += "}";
        }
    }
    out += first ? "]\n" : "\n]\n";
    return out;
}

std::vector<Trace> parse_json(const std::string &text) {
    const json doc = json::parse(text);
    if (!doc.is_array()) {
        throw std::invalid_argument("Result JSON must be an array of rows");
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto &obj : doc) {
        std::vector<std::string> fields;
        for (const char *key : kResultColumns) {
            const json &v = obj.at(key);
            if (v.is_string()) {
                fields.push_back(v.get<std::string>());
            } else if (v.is_null()) {
                fields.emplace_back("nan");
            } else if (v.is_number_unsigned() || v.is_number_integer()) {
                fields.push_back(std::to_string(v.get<long long>()));
            } else {
                fields.push_back(format_double(v.get<double>()));
            }
        }
        rows.push_back(std::move(fields));
    }
    return collect(rows);
}

void emit_results(std::span<const Trace> traces, const std::filesystem::path &path,
                  ResultFormat format) {
    const std::string body = format == ResultFormat::Json ? format_json(traces) : format_csv(traces);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("Cannot write " + path.string() + ": " + std::strerror(errno));
    }
    out << body;
    out.flush();
    if (!out) {
        throw std::runtime_error("Write failed for " + path.string());
    }
}

} // namespace qnglab
