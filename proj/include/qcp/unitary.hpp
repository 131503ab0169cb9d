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

#include <complex>
#include <vector>

#include "qcp/circuit.hpp"

namespace qcp {

using Complex = std::complex<double>;

/// Dense 2^n x 2^n matrix, row-major. Basis ordering is little-endian:
/// qubit 0 is the least significant bit of the row/column index.
struct Unitary {
    int n_qubits = 0;
    std::vector<Complex> m;

    explicit Unitary(int n);
    static Unitary identity(int n);

    int dim() const { return 1 << n_qubits; }
    Complex& at(int row, int col) { return m[static_cast<std::size_t>(row) * dim() + col]; }
    const Complex& at(int row, int col) const {
        return m[static_cast<std::size_t>(row) * dim() + col];
    }
};

/// 2x2 matrix of a single-qubit kind; rotations follow RG(t) = exp(-i t G / 2).
std::vector<Complex> gate_matrix_1q(GateKind kind, double angle);
/// 4x4 matrix of a two-qubit kind, first operand = low bit.
std::vector<Complex> gate_matrix_2q(GateKind kind);

/// Builds the circuit unitary as the ordered product of instruction
/// unitaries (later instructions multiply on the left). This is the
/// verification oracle: generic matrix embedding, not the simulator's
/// gate kernels. Pre: fully bound, fully physical, no MEASURE, n <= 10.
Unitary unitary_of(const Circuit& circuit);

Unitary multiply(const Unitary& a, const Unitary& b);

std::vector<Complex> apply_unitary(const Unitary& u, const std::vector<Complex>& state);

/// True when a == exp(i phi) * b entry-wise within tol, phase aligned on
/// the largest entry of b.
bool equal_up_to_phase(const Unitary& a, const Unitary& b, double tol);

/// |<a|b>|^2, the standard state fidelity for pure states.
double state_fidelity(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace qcp
