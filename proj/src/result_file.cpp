// Copyright 2026 The qcp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcp/result_file.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "qcp/circuit.hpp"

namespace qcp {

ResultFile make_result(const std::string& kind, nlohmann::json config,
                       nlohmann::json payload) {
    ResultFile result;
    result.kind = kind;
    result.created_at = iso8601_utc_now();
    result.config = std::move(config);
    result.payload = std::move(payload);
    return result;
}

nlohmann::json result_to_json(const ResultFile& result) {
    return {{"format_version", result.format_version},
            {"kind", result.kind},
            {"created_at", result.created_at},
            {"config", result.config},
            {"payload", result.payload}};
}

ResultFile result_from_json(const nlohmann::json& j) {
    ResultFile result;
    result.format_version = j.at("format_version").get<int>();
    if (result.format_version != 1)
        throw Error("unsupported result format version " +
                    std::to_string(result.format_version));
    result.kind = j.at("kind").get<std::string>();
    result.created_at = j.at("created_at").get<std::string>();
    result.config = j.at("config");
    result.payload = j.at("payload");
    return result;
}

void save_result(const ResultFile& result, const std::string& json_path) {
    write_text_file(json_path, result_to_json(result).dump(2) + "\n");
}

ResultFile load_result(const std::string& json_path) {
    return result_from_json(nlohmann::json::parse(read_text_file(json_path)));
}

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::string csv_sweep(const nlohmann::json& payload) {
    std::ostringstream out;
    out << "theta,cost,stderr\n";
    const auto& grid = payload.at("grid");
    const auto& costs = payload.at("costs");
    const auto& stderrs = payload.at("stderrs");
    for (std::size_t i = 0; i < grid.size(); ++i)
        out << format_double(grid[i].get<double>()) << ','
            << format_double(costs[i].get<double>()) << ','
            << format_double(stderrs[i].get<double>()) << "\n";
    return out.str();
}

std::string csv_train(const nlohmann::json& payload) {
    std::ostringstream out;
    const auto& trace = payload.at("trace");
    const std::size_t dim =
        trace.empty() ? 0 : trace[0].at("params").size();
    out << "iteration";
    for (std::size_t d = 0; d < dim; ++d) out << ",param" << d;
    out << ",cost\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        out << i;
        for (const auto& p : trace[i].at("params"))
            out << ',' << format_double(p.get<double>());
        out << ',' << format_double(trace[i].at("cost").get<double>()) << "\n";
    }
    return out.str();
}

std::string csv_grid(const nlohmann::json& payload) {
    std::ostringstream out;
    out << "theta0,theta1,p1\n";
    const auto& axis = payload.at("axis");
    const auto& p1 = payload.at("p1");
    const std::size_t n = axis.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out << format_double(axis[i].get<double>()) << ','
                << format_double(axis[j].get<double>()) << ','
                << format_double(p1[i * n + j].get<double>()) << "\n";
    return out.str();
}

std::string csv_run(const nlohmann::json& payload) {
    std::ostringstream out;
    out << "bitstring,count,frequency\n";
    const auto& counts = payload.at("counts");
    const double shots = payload.at("shots").get<double>();
    for (auto it = counts.begin(); it != counts.end(); ++it)
        out << it.key() << ',' << it.value().get<int>() << ','
            << format_double(it.value().get<double>() / shots) << "\n";
    return out.str();
}

}  // namespace

std::string payload_to_csv(const std::string& kind,
                           const nlohmann::json& payload) {
    if (kind == "sweep") return csv_sweep(payload);
    if (kind == "train") return csv_train(payload);
    if (kind == "grid") return csv_grid(payload);
    if (kind == "run") return csv_run(payload);
    throw Error("unknown result kind '" + kind + "'");
}

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm_utc;
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace qcp
