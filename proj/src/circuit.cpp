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

#include "qcp/circuit.hpp"

#include <algorithm>
#include <cstdio>

namespace qcp {

QubitRef QubitRef::abstract(std::string name) {
    if (name.empty()) throw Error("abstract qubit name must not be empty");
    QubitRef ref;
    ref.physical_ = false;
    ref.name_ = std::move(name);
    return ref;
}

QubitRef QubitRef::physical(int index) {
    if (index < 0) throw Error("physical qubit index must be non-negative");
    QubitRef ref;
    ref.physical_ = true;
    ref.index_ = index;
    return ref;
}

const std::string& QubitRef::name() const {
    if (physical_) throw Error("physical qubit ref has no name");
    return name_;
}

int QubitRef::index() const {
    if (!physical_) throw Error("abstract qubit ref has no index");
    return index_;
}

bool QubitRef::operator<(const QubitRef& other) const {
    if (physical_ != other.physical_) return physical_ < other.physical_;
    if (physical_) return index_ < other.index_;
    return name_ < other.name_;
}

std::string QubitRef::to_string() const {
    return physical_ ? std::to_string(index_) : "%" + name_;
}

Param Param::constant(double radians) {
    Param p;
    p.value_ = radians;
    return p;
}

Param Param::symbol(std::string name, bool negated) {
    if (name.empty()) throw Error("symbol name must not be empty");
    Param p;
    p.symbol_ = std::move(name);
    p.negated_ = negated;
    return p;
}

double Param::value() const {
    if (is_symbol()) throw Error("unbound symbol %" + symbol_ + " has no value");
    return value_;
}

const std::string& Param::symbol_name() const {
    if (is_const()) throw Error("constant param has no symbol name");
    return symbol_;
}

std::string Param::to_string() const {
    if (is_symbol()) return (negated_ ? "-%" : "%") + symbol_;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value_);
    return buf;
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::I: return "I";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::SWAP: return "SWAP";
        case GateKind::Measure: return "MEASURE";
    }
    throw Error("unknown gate kind");
}

int gate_qubit_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
        case GateKind::CZ:
        case GateKind::SWAP:
            return 2;
        default:
            return 1;
    }
}

int gate_param_arity(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
            return 1;
        default:
            return 0;
    }
}

Instruction Instruction::gate(GateKind kind, std::vector<QubitRef> qubits,
                              std::vector<Param> params) {
    if (kind == GateKind::Measure)
        throw Error("use Instruction::measure for MEASURE");
    Instruction instr;
    instr.kind = kind;
    instr.params = std::move(params);
    instr.qubits = std::move(qubits);
    return instr;
}

Instruction Instruction::measure(QubitRef qubit, int classical_bit) {
    if (classical_bit < 0) throw Error("classical bit index must be non-negative");
    Instruction instr;
    instr.kind = GateKind::Measure;
    instr.qubits = {std::move(qubit)};
    instr.classical_bit = classical_bit;
    return instr;
}

Circuit::Circuit(std::vector<Instruction> instructions)
    : instructions_(std::move(instructions)) {
    std::set<QubitRef> seen_qubits;
    std::set<QubitRef> measured;
    std::set<int> used_bits;
    std::set<std::string> seen_names;
    bool any_abstract = false;
    bool any_physical = false;

    for (const Instruction& instr : instructions_) {
        const int want_qubits = gate_qubit_arity(instr.kind);
        const int want_params = gate_param_arity(instr.kind);
        if (static_cast<int>(instr.qubits.size()) != want_qubits)
            throw Error(std::string(gate_name(instr.kind)) + " expects " +
                        std::to_string(want_qubits) + " qubit(s)");
        if (static_cast<int>(instr.params.size()) != want_params)
            throw Error(std::string(gate_name(instr.kind)) + " expects " +
                        std::to_string(want_params) + " parameter(s)");
        if (instr.qubits.size() == 2 && instr.qubits[0] == instr.qubits[1])
            throw Error(std::string(gate_name(instr.kind)) +
                        " operands must be distinct qubits");

        for (const QubitRef& q : instr.qubits) {
            if (measured.count(q))
                throw Error("instruction touches qubit " + q.to_string() +
                            " after it was measured");
            if (q.is_physical()) {
                any_physical = true;
                max_physical_index_ = std::max(max_physical_index_, q.index());
            } else {
                any_abstract = true;
                if (!seen_names.count(q.name())) {
                    seen_names.insert(q.name());
                    abstract_names_.push_back(q.name());
                }
            }
            seen_qubits.insert(q);
        }
        if (instr.is_measure()) {
            if (!used_bits.insert(instr.classical_bit).second)
                throw Error("duplicate classical bit " +
                            std::to_string(instr.classical_bit));
            measured.insert(instr.qubits[0]);
            ++n_measurements_;
        }
        for (const Param& p : instr.params)
            if (p.is_symbol()) free_symbols_.insert(p.symbol_name());
    }
    if (any_abstract && any_physical)
        throw Error("circuit mixes abstract and physical qubit refs");

    qubits_.assign(seen_qubits.begin(), seen_qubits.end());
    classical_bits_.assign(used_bits.begin(), used_bits.end());
}

bool Circuit::is_physical() const {
    return abstract_names_.empty();
}

bool Circuit::is_abstract() const {
    return max_physical_index_ < 0;
}

Circuit bind_parameters(const Circuit& circuit,
                        const std::map<std::string, double>& binding) {
    for (const auto& [name, value] : binding) {
        (void)value;
        if (!circuit.free_symbols().count(name))
            throw Error("cannot bind unknown symbol %" + name);
    }
    std::vector<Instruction> out = circuit.instructions();
    for (Instruction& instr : out) {
        for (Param& p : instr.params) {
            if (!p.is_symbol()) continue;
            auto it = binding.find(p.symbol_name());
            if (it == binding.end()) continue;
            p = Param::constant(p.negated() ? -it->second : it->second);
        }
    }
    return Circuit(std::move(out));
}

Circuit assign_qubits(const Circuit& circuit,
                      const std::map<std::string, int>& mapping) {
    if (circuit.abstract_names().empty())
        throw Error("circuit has no abstract qubits to assign");
    std::set<int> targets;
    for (const auto& [name, index] : mapping) {
        (void)name;
        if (!targets.insert(index).second)
            throw Error("duplicate target index " + std::to_string(index) +
                        " in qubit assignment");
    }
    std::vector<Instruction> out = circuit.instructions();
    for (Instruction& instr : out) {
        for (QubitRef& q : instr.qubits) {
            if (q.is_physical()) continue;
            auto it = mapping.find(q.name());
            if (it == mapping.end())
                throw Error("no assignment for abstract qubit %" + q.name());
            q = QubitRef::physical(it->second);
        }
    }
    return Circuit(std::move(out));
}

int circuit_depth(const Circuit& circuit) {
    std::map<QubitRef, int> layer;
    int depth = 0;
    for (const Instruction& instr : circuit.instructions()) {
        int at = 0;
        for (const QubitRef& q : instr.qubits) {
            auto it = layer.find(q);
            if (it != layer.end()) at = std::max(at, it->second);
        }
        ++at;
        for (const QubitRef& q : instr.qubits) layer[q] = at;
        depth = std::max(depth, at);
    }
    return depth;
}

}  // namespace qcp
