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
#include <string>
#include <utility>
#include <vector>

#include "qcp/circuit.hpp"

namespace qcp {

/// The gate family a device executes directly. Kept as data so an
/// alternative target is a different spec file, not different code.
struct NativeGateSet {
    bool rz_any_angle = true;
    /// RX allowed at integer multiples of this step; 0 means any angle.
    double rx_angle_step = 1.5707963267948966;
    std::vector<GateKind> two_qubit = {GateKind::CZ};

    /// Symbolic RZ counts as native when rz_any_angle; symbolic RX never
    /// does (the multiple-of-step constraint cannot be checked unbound).
    bool accepts(const Instruction& instr) const;
};

/// Static description of an execution target: size, coupling graph,
/// native gates, and per-qubit / per-edge fidelities used for placement.
struct DeviceSpec {
    std::string name;
    int n_qubits = 0;
    std::vector<std::pair<int, int>> edges;  // normalized: first < second
    NativeGateSet native;
    std::vector<double> qubit_fidelity;  // length n_qubits, values in [0,1]
    std::map<std::pair<int, int>, double> edge_fidelity;

    bool has_edge(int a, int b) const;
    const std::vector<int>& neighbors(int q) const;
    double fidelity_of_edge(int a, int b) const;

    void validate() const;

    /// 8-qubit ring 0-1-2-...-7-0 with fidelities that favor the
    /// 0-1-2 corner, so default placement lands there.
    static DeviceSpec agave8();

  private:
    mutable std::vector<std::vector<int>> adjacency_;
    void build_adjacency() const;
};

/// Structured-text (JSON) schema:
///   { "name": str, "n_qubits": int, "edges": [[a,b],...],
///     "native": {"rz_any_angle": bool, "rx_angle_step": num,
///                "two_qubit": ["CZ",...]},
///     "qubit_fidelity": [f0,...],
///     "edge_fidelity": [[a,b,f],...] }
/// Omitted fidelities default to 1.0; "native" defaults to RZ/RX/CZ.
DeviceSpec parse_device_spec(const std::string& json_text);
std::string device_spec_to_json(const DeviceSpec& device);

/// Resolves a --device argument: a builtin name ("agave8") or a path to
/// a spec file.
DeviceSpec load_device(const std::string& name_or_path);

}  // namespace qcp
