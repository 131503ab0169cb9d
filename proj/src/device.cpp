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

#include "qcp/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcp {

namespace {

bool is_step_multiple(double angle, double step) {
    if (step == 0.0) return true;
    const double k = angle / step;
    return std::abs(k - std::round(k)) < 1e-9;
}

std::pair<int, int> norm_edge(int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

bool NativeGateSet::accepts(const Instruction& instr) const {
    switch (instr.kind) {
        case GateKind::Measure:
            return true;
        case GateKind::RZ:
            return rz_any_angle || (instr.params[0].is_const() &&
                                    is_step_multiple(instr.params[0].value(),
                                                     rx_angle_step));
        case GateKind::RX:
            return instr.params[0].is_const() &&
                   is_step_multiple(instr.params[0].value(), rx_angle_step);
        default:
            return instr.qubits.size() == 2 &&
                   std::find(two_qubit.begin(), two_qubit.end(), instr.kind) !=
                       two_qubit.end();
    }
}

bool DeviceSpec::has_edge(int a, int b) const {
    auto e = norm_edge(a, b);
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

void DeviceSpec::build_adjacency() const {
    adjacency_.assign(n_qubits, {});
    for (auto [a, b] : edges) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

const std::vector<int>& DeviceSpec::neighbors(int q) const {
    if (adjacency_.empty()) build_adjacency();
    if (q < 0 || q >= n_qubits)
        throw Error("qubit index " + std::to_string(q) + " off device");
    return adjacency_[q];
}

double DeviceSpec::fidelity_of_edge(int a, int b) const {
    auto it = edge_fidelity.find(norm_edge(a, b));
    return it == edge_fidelity.end() ? 1.0 : it->second;
}

void DeviceSpec::validate() const {
    if (n_qubits <= 0) throw Error("device must have at least one qubit");
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n_qubits || b >= n_qubits)
            throw Error("device edge references qubit off device");
        if (a == b) throw Error("device edge must join distinct qubits");
        if (a > b) throw Error("device edges must be normalized (a < b)");
    }
    if (static_cast<int>(qubit_fidelity.size()) != n_qubits)
        throw Error("qubit_fidelity length must equal n_qubits");
    for (double f : qubit_fidelity)
        if (f < 0.0 || f > 1.0) throw Error("qubit fidelity outside [0,1]");
    for (const auto& [edge, f] : edge_fidelity) {
        if (f < 0.0 || f > 1.0) throw Error("edge fidelity outside [0,1]");
        if (std::find(edges.begin(), edges.end(), edge) == edges.end())
            throw Error("edge fidelity for a non-existent edge");
    }
    // Connectivity: BFS from qubit 0 must reach everything.
    if (n_qubits > 1) {
        std::vector<char> seen(n_qubits, 0);
        std::vector<int> frontier = {0};
        seen[0] = 1;
        while (!frontier.empty()) {
            int q = frontier.back();
            frontier.pop_back();
            for (int nb : neighbors(q))
                if (!seen[nb]) {
                    seen[nb] = 1;
                    frontier.push_back(nb);
                }
        }
        if (std::count(seen.begin(), seen.end(), 1) != n_qubits)
            throw Error("device coupling graph must be connected");
    }
}

DeviceSpec DeviceSpec::agave8() {
    DeviceSpec d;
    d.name = "agave8";
    d.n_qubits = 8;
    d.edges = {{0, 1}, {0, 7}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}};
    d.qubit_fidelity = {0.990, 0.992, 0.989, 0.962, 0.958, 0.970, 0.965, 0.955};
    d.edge_fidelity = {
        {{0, 1}, 0.965}, {{1, 2}, 0.960}, {{2, 3}, 0.920}, {{3, 4}, 0.915},
        {{4, 5}, 0.925}, {{5, 6}, 0.918}, {{6, 7}, 0.922}, {{0, 7}, 0.930},
    };
    d.validate();
    return d;
}

DeviceSpec parse_device_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("device spec is not valid JSON: ") + e.what());
    }
    DeviceSpec d;
    try {
        d.name = j.value("name", "device");
        d.n_qubits = j.at("n_qubits").get<int>();
        for (const auto& e : j.at("edges")) {
            int a = e.at(0).get<int>();
            int b = e.at(1).get<int>();
            d.edges.push_back(norm_edge(a, b));
        }
        std::sort(d.edges.begin(), d.edges.end());
        if (j.contains("qubit_fidelity"))
            d.qubit_fidelity = j["qubit_fidelity"].get<std::vector<double>>();
        else
            d.qubit_fidelity.assign(d.n_qubits, 1.0);
        if (j.contains("edge_fidelity"))
            for (const auto& e : j["edge_fidelity"])
                d.edge_fidelity[norm_edge(e.at(0).get<int>(), e.at(1).get<int>())] =
                    e.at(2).get<double>();
        if (j.contains("native")) {
            const auto& n = j["native"];
            d.native.rz_any_angle = n.value("rz_any_angle", true);
            d.native.rx_angle_step = n.value("rx_angle_step", 1.5707963267948966);
            if (n.contains("two_qubit")) {
                d.native.two_qubit.clear();
                for (const auto& g : n["two_qubit"]) {
                    std::string gname = g.get<std::string>();
                    if (gname == "CZ")
                        d.native.two_qubit.push_back(GateKind::CZ);
                    else if (gname == "CNOT")
                        d.native.two_qubit.push_back(GateKind::CNOT);
                    else if (gname == "SWAP")
                        d.native.two_qubit.push_back(GateKind::SWAP);
                    else
                        throw Error("unknown two-qubit native gate " + gname);
                }
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed device spec: ") + e.what());
    }
    d.validate();
    return d;
}

std::string device_spec_to_json(const DeviceSpec& device) {
    nlohmann::json j;
    j["name"] = device.name;
    j["n_qubits"] = device.n_qubits;
    auto edges = nlohmann::json::array();
    for (auto [a, b] : device.edges) edges.push_back({a, b});
    j["edges"] = edges;
    j["qubit_fidelity"] = device.qubit_fidelity;
    auto efid = nlohmann::json::array();
    for (const auto& [edge, f] : device.edge_fidelity)
        efid.push_back({edge.first, edge.second, f});
    j["edge_fidelity"] = efid;
    nlohmann::json native;
    native["rz_any_angle"] = device.native.rz_any_angle;
    native["rx_angle_step"] = device.native.rx_angle_step;
    auto two_qubit = nlohmann::json::array();
    for (GateKind k : device.native.two_qubit) two_qubit.push_back(gate_name(k));
    native["two_qubit"] = two_qubit;
    j["native"] = native;
    return j.dump(2);
}

DeviceSpec load_device(const std::string& name_or_path) {
    if (name_or_path == "agave8") return DeviceSpec::agave8();
    std::ifstream in(name_or_path);
    if (!in) throw Error("cannot open device spec '" + name_or_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_device_spec(buf.str());
}

}  // namespace qcp
