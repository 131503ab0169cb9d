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

#include "qcp/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace qcp {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kPi = std::numbers::pi;

double path_score(const DeviceSpec& device, const std::vector<int>& path) {
    double score = 1.0;
    for (std::size_t i = 0; i < path.size(); ++i) {
        score *= device.qubit_fidelity[path[i]];
        if (i + 1 < path.size())
            score *= device.fidelity_of_edge(path[i], path[i + 1]);
    }
    return score;
}

void enumerate_paths(const DeviceSpec& device, std::vector<int>& path,
                     std::vector<char>& used, int k, double& best_score,
                     std::vector<int>& best_path) {
    if (static_cast<int>(path.size()) == k) {
        // A path and its reverse are the same selection; keeping only the
        // ascending-endpoint orientation avoids last-ulp score races
        // between the two and realizes the lowest-sequence tie break.
        if (k > 1 && path.back() < path.front()) return;
        double score = path_score(device, path);
        if (score > best_score ||
            (score == best_score && (best_path.empty() || path < best_path))) {
            best_score = score;
            best_path = path;
        }
        return;
    }
    if (path.empty()) {
        for (int q = 0; q < device.n_qubits; ++q) {
            path.push_back(q);
            used[q] = 1;
            enumerate_paths(device, path, used, k, best_score, best_path);
            used[q] = 0;
            path.pop_back();
        }
        return;
    }
    for (int q : device.neighbors(path.back())) {
        if (used[q]) continue;
        path.push_back(q);
        used[q] = 1;
        enumerate_paths(device, path, used, k, best_score, best_path);
        used[q] = 0;
        path.pop_back();
    }
}

// BFS shortest path between two physical qubits; neighbor expansion in
// ascending index order makes the result deterministic.
std::vector<int> shortest_path(const DeviceSpec& device, int from, int to) {
    std::vector<int> parent(device.n_qubits, -1);
    std::deque<int> frontier = {from};
    parent[from] = from;
    while (!frontier.empty()) {
        int q = frontier.front();
        frontier.pop_front();
        if (q == to) break;
        for (int nb : device.neighbors(q))
            if (parent[nb] < 0) {
                parent[nb] = q;
                frontier.push_back(nb);
            }
    }
    if (parent[to] < 0)
        throw Error("no path between qubits " + std::to_string(from) + " and " +
                    std::to_string(to));
    std::vector<int> path = {to};
    while (path.back() != from) path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

bool is_half_pi_multiple(const Param& p) {
    if (!p.is_const()) return false;
    const double k = p.value() / kHalfPi;
    return std::abs(k - std::round(k)) < 1e-9;
}

Instruction rz(const QubitRef& q, Param angle) {
    return Instruction::gate(GateKind::RZ, {q}, {std::move(angle)});
}
Instruction rx(const QubitRef& q, Param angle) {
    return Instruction::gate(GateKind::RX, {q}, {std::move(angle)});
}

// RX(t) = RZ(pi/2) RX(pi/2) RZ(t) RX(-pi/2) RZ(-pi/2) as a matrix
// product, i.e. instruction order RZ(-pi/2) RX(-pi/2) RZ(t) RX(pi/2)
// RZ(pi/2). Exact, so a symbol in t stays a plain RZ angle.
void emit_rx(const QubitRef& q, const Param& angle, std::vector<Instruction>& out) {
    if (is_half_pi_multiple(angle)) {
        out.push_back(rx(q, angle));
        return;
    }
    out.push_back(rz(q, Param::constant(-kHalfPi)));
    out.push_back(rx(q, Param::constant(-kHalfPi)));
    out.push_back(rz(q, angle));
    out.push_back(rx(q, Param::constant(kHalfPi)));
    out.push_back(rz(q, Param::constant(kHalfPi)));
}

// H = phase * RZ(pi/2) RX(pi/2) RZ(pi/2); symmetric, order immaterial.
void emit_h(const QubitRef& q, std::vector<Instruction>& out) {
    out.push_back(rz(q, Param::constant(kHalfPi)));
    out.push_back(rx(q, Param::constant(kHalfPi)));
    out.push_back(rz(q, Param::constant(kHalfPi)));
}

void emit_cnot(const QubitRef& control, const QubitRef& target,
               std::vector<Instruction>& out) {
    emit_h(target, out);
    out.push_back(Instruction::gate(GateKind::CZ, {control, target}));
    emit_h(target, out);
}

}  // namespace

std::vector<int> select_qubits(const DeviceSpec& device, int k) {
    if (k < 1) throw Error("qubit selection needs k >= 1");
    if (k > device.n_qubits)
        throw Error("requested " + std::to_string(k) + " qubits on a " +
                    std::to_string(device.n_qubits) + "-qubit device");
    std::vector<int> path;
    std::vector<char> used(device.n_qubits, 0);
    std::vector<int> best_path;
    double best_score = -1.0;
    enumerate_paths(device, path, used, k, best_score, best_path);
    if (best_path.empty())
        throw Error("no connected path of " + std::to_string(k) + " qubits");
    return best_path;
}

RoutedCircuit route(const Circuit& circuit, const DeviceSpec& device) {
    if (!circuit.empty() && !circuit.is_physical())
        throw Error("routing requires physical qubit indices");
    if (circuit.max_physical_index() >= device.n_qubits)
        throw Error("circuit uses qubit " +
                    std::to_string(circuit.max_physical_index()) +
                    " beyond device size " + std::to_string(device.n_qubits));

    // location[logical] = current physical home of that logical qubit.
    std::vector<int> location(device.n_qubits);
    for (int i = 0; i < device.n_qubits; ++i) location[i] = i;
    std::vector<int> occupant = location;  // inverse map

    auto do_swap = [&](int pa, int pb, std::vector<Instruction>& out) {
        out.push_back(Instruction::gate(
            GateKind::SWAP, {QubitRef::physical(pa), QubitRef::physical(pb)}));
        int la = occupant[pa], lb = occupant[pb];
        std::swap(location[la], location[lb]);
        std::swap(occupant[pa], occupant[pb]);
    };

    std::vector<Instruction> out;
    for (const Instruction& instr : circuit.instructions()) {
        if (instr.is_measure()) {
            out.push_back(Instruction::measure(
                QubitRef::physical(location[instr.qubits[0].index()]),
                instr.classical_bit));
            continue;
        }
        if (instr.qubits.size() == 1) {
            Instruction moved = instr;
            moved.qubits[0] = QubitRef::physical(location[instr.qubits[0].index()]);
            out.push_back(moved);
            continue;
        }
        int pa = location[instr.qubits[0].index()];
        int pb = location[instr.qubits[1].index()];
        if (!device.has_edge(pa, pb)) {
            std::vector<int> path = shortest_path(device, pa, pb);
            // Walk the second operand back along the path until adjacent.
            for (std::size_t i = path.size() - 1; i >= 2; --i)
                do_swap(path[i - 1], path[i], out);
            pa = location[instr.qubits[0].index()];
            pb = location[instr.qubits[1].index()];
        }
        Instruction moved = instr;
        moved.qubits = {QubitRef::physical(pa), QubitRef::physical(pb)};
        out.push_back(moved);
    }

    RoutedCircuit routed{Circuit(std::move(out)), {}};
    for (const QubitRef& q : circuit.qubits())
        routed.final_permutation[q.index()] = location[q.index()];
    return routed;
}

std::vector<Instruction> decompose_gate(const Instruction& instr) {
    for (const QubitRef& q : instr.qubits)
        if (!q.is_physical())
            throw Error("decomposition requires physical qubits");

    std::vector<Instruction> out;
    switch (instr.kind) {
        case GateKind::I:
            break;  // identity compiles away
        case GateKind::X:
            out.push_back(rx(instr.qubits[0], Param::constant(kPi)));
            break;
        case GateKind::Y:
            // RZ(-pi/2) RX(pi) RZ(pi/2) as a matrix product = i Y.
            out.push_back(rz(instr.qubits[0], Param::constant(kHalfPi)));
            out.push_back(rx(instr.qubits[0], Param::constant(kPi)));
            out.push_back(rz(instr.qubits[0], Param::constant(-kHalfPi)));
            break;
        case GateKind::Z:
            out.push_back(rz(instr.qubits[0], Param::constant(kPi)));
            break;
        case GateKind::H:
            emit_h(instr.qubits[0], out);
            break;
        case GateKind::RX:
            emit_rx(instr.qubits[0], instr.params[0], out);
            break;
        case GateKind::RY:
            // RY(t) = RZ(pi/2) RX(t) RZ(-pi/2) as a matrix product; exact.
            out.push_back(rz(instr.qubits[0], Param::constant(-kHalfPi)));
            emit_rx(instr.qubits[0], instr.params[0], out);
            out.push_back(rz(instr.qubits[0], Param::constant(kHalfPi)));
            break;
        case GateKind::RZ:
            out.push_back(instr);
            break;
        case GateKind::CNOT:
            emit_cnot(instr.qubits[0], instr.qubits[1], out);
            break;
        case GateKind::CZ:
            out.push_back(instr);
            break;
        case GateKind::SWAP:
            emit_cnot(instr.qubits[0], instr.qubits[1], out);
            emit_cnot(instr.qubits[1], instr.qubits[0], out);
            emit_cnot(instr.qubits[0], instr.qubits[1], out);
            break;
        case GateKind::Measure:
            out.push_back(instr);
            break;
    }
    return out;
}

CompiledCircuit compile(const Circuit& circuit, const DeviceSpec& device) {
    CompiledCircuit result;

    Circuit physical = circuit;
    if (!circuit.abstract_names().empty()) {
        const auto& names = circuit.abstract_names();
        std::vector<int> selected =
            select_qubits(device, static_cast<int>(names.size()));
        for (std::size_t i = 0; i < names.size(); ++i)
            result.initial_map[names[i]] = selected[i];
        physical = assign_qubits(circuit, result.initial_map);
    }

    RoutedCircuit routed = route(physical, device);
    result.final_permutation = std::move(routed.final_permutation);

    std::vector<Instruction> native;
    for (const Instruction& instr : routed.circuit.instructions())
        for (Instruction& piece : decompose_gate(instr))
            native.push_back(std::move(piece));
    result.circuit = Circuit(std::move(native));

    for (const Instruction& instr : result.circuit.instructions()) {
        if (!device.native.accepts(instr))
            throw Error(std::string("compiled gate ") + gate_name(instr.kind) +
                        " is not native to device " + device.name);
        if (instr.qubits.size() == 2 &&
            !device.has_edge(instr.qubits[0].index(), instr.qubits[1].index()))
            throw Error("compiled two-qubit gate off the coupling graph");
        ++result.gate_counts[instr.kind];
    }
    result.depth = circuit_depth(result.circuit);
    return result;
}

}  // namespace qcp
