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
#include <vector>

#include "qcp/circuit.hpp"
#include "qcp/device.hpp"

namespace qcp {

/// Result of routing: the edge-respecting circuit plus where each
/// logical qubit's state ended up after the inserted SWAPs.
struct RoutedCircuit {
    Circuit circuit;
    std::map<int, int> final_permutation;  // logical index -> final physical
};

/// Output of the full pipeline. `circuit` is all-physical and all-native;
/// every two-qubit gate sits on a device edge.
struct CompiledCircuit {
    Circuit circuit;
    std::map<std::string, int> initial_map;  // abstract name -> physical
    std::map<int, int> final_permutation;    // logical physical -> final physical
    int depth = 0;
    std::map<GateKind, int> gate_counts;
};

/// Picks a connected path of k physical qubits maximizing the product of
/// qubit fidelities and internal edge fidelities; ties break toward the
/// lexicographically smallest index sequence.
std::vector<int> select_qubits(const DeviceSpec& device, int k);

/// Inserts SWAPs along BFS shortest paths so every two-qubit gate acts
/// on a coupling edge. The permutation is tracked forward (no restoring
/// SWAPs); measurements follow their logical qubit.
RoutedCircuit route(const Circuit& circuit, const DeviceSpec& device);

/// Rewrites one instruction into the RZ / RX(k*pi/2) / CZ native family,
/// equal to the input up to global phase. Symbolic rotation angles land
/// in RZ, so the output structure does not depend on later binding.
std::vector<Instruction> decompose_gate(const Instruction& instr);

/// select_qubits -> assign_qubits -> route -> decompose, in that order.
/// Physical input circuits skip selection and assignment. Symbols are
/// allowed in rotation angles; everything else must be bound.
CompiledCircuit compile(const Circuit& circuit, const DeviceSpec& device);

}  // namespace qcp
