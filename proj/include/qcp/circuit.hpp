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

#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcp {

/// Base error type for everything in this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A qubit operand: either a named placeholder ("abstract") that has not
/// yet been assigned to hardware, or a physical device index. A circuit
/// holds refs of one flavor only, never a mix.
class QubitRef {
  public:
    static QubitRef abstract(std::string name);
    static QubitRef physical(int index);

    bool is_physical() const { return physical_; }
    bool is_abstract() const { return !physical_; }
    const std::string& name() const;
    int index() const;

    bool operator==(const QubitRef& other) const = default;
    bool operator<(const QubitRef& other) const;

    std::string to_string() const;

  private:
    QubitRef() = default;
    bool physical_ = false;
    std::string name_;
    int index_ = -1;
};

/// A gate angle: a bound constant in radians, or a free symbol. A symbol
/// may carry a negation so circuits like "RY(-%theta)" stay symbolic.
class Param {
  public:
    static Param constant(double radians);
    static Param symbol(std::string name, bool negated = false);

    bool is_const() const { return symbol_.empty(); }
    bool is_symbol() const { return !symbol_.empty(); }
    double value() const;
    const std::string& symbol_name() const;
    bool negated() const { return negated_; }

    bool operator==(const Param& other) const = default;

    std::string to_string() const;

  private:
    Param() = default;
    double value_ = 0.0;
    std::string symbol_;
    bool negated_ = false;
};

enum class GateKind {
    I,
    X,
    Y,
    Z,
    H,
    RX,
    RY,
    RZ,
    CNOT,
    CZ,
    SWAP,
    Measure,
};

const char* gate_name(GateKind kind);
/// Number of qubit operands for a kind (Measure: 1).
int gate_qubit_arity(GateKind kind);
/// Number of angle parameters for a kind (rotations: 1, others: 0).
int gate_param_arity(GateKind kind);

struct Instruction {
    GateKind kind;
    std::vector<Param> params;
    std::vector<QubitRef> qubits;
    int classical_bit = -1;  // Measure only

    static Instruction gate(GateKind kind, std::vector<QubitRef> qubits,
                            std::vector<Param> params = {});
    static Instruction measure(QubitRef qubit, int classical_bit);

    bool is_measure() const { return kind == GateKind::Measure; }
    bool operator==(const Instruction& other) const = default;
};

/// An ordered instruction list. Construction validates arity, operand
/// distinctness, the no-gate-after-measure ordering, classical-bit
/// uniqueness, and that qubit refs are not a mix of abstract and
/// physical. Instances are immutable; every transformation returns a
/// new circuit.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::vector<Instruction> instructions);

    const std::vector<Instruction>& instructions() const { return instructions_; }
    bool empty() const { return instructions_.empty(); }
    std::size_t size() const { return instructions_.size(); }

    /// All qubit refs, sorted; abstract names in first-appearance order.
    const std::vector<QubitRef>& qubits() const { return qubits_; }
    /// Abstract names in order of first appearance in the program.
    const std::vector<std::string>& abstract_names() const { return abstract_names_; }
    const std::set<std::string>& free_symbols() const { return free_symbols_; }

    bool is_physical() const;
    bool is_abstract() const;
    bool fully_bound() const { return free_symbols_.empty(); }
    bool has_measurements() const { return n_measurements_ > 0; }
    int n_measurements() const { return n_measurements_; }
    /// Sorted classical bit indices of all Measure instructions.
    const std::vector<int>& classical_bits() const { return classical_bits_; }
    /// Largest physical index used, or -1 for abstract/empty circuits.
    int max_physical_index() const { return max_physical_index_; }

    bool operator==(const Circuit& other) const {
        return instructions_ == other.instructions_;
    }

  private:
    std::vector<Instruction> instructions_;
    std::vector<QubitRef> qubits_;
    std::vector<std::string> abstract_names_;
    std::set<std::string> free_symbols_;
    std::vector<int> classical_bits_;
    int n_measurements_ = 0;
    int max_physical_index_ = -1;
};

/// Replaces bound symbols with constants. Keys must be free symbols of
/// the circuit; unbound symbols survive. Negated symbols bind to the
/// negated value.
Circuit bind_parameters(const Circuit& circuit,
                        const std::map<std::string, double>& binding);

/// Replaces every abstract ref with a physical index. The mapping must
/// cover all abstract names and be injective.
Circuit assign_qubits(const Circuit& circuit,
                      const std::map<std::string, int>& mapping);

/// Greedy layering depth: each instruction lands in the earliest layer
/// after all predecessors on its qubits; Measure occupies a layer too.
int circuit_depth(const Circuit& circuit);

}  // namespace qcp
