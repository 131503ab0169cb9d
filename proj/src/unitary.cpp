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

#include "qcp/unitary.hpp"

#include <cmath>

namespace qcp {

namespace {
constexpr Complex kI{0.0, 1.0};
}

Unitary::Unitary(int n) : n_qubits(n) {
    m.assign(static_cast<std::size_t>(dim()) * dim(), Complex{0.0, 0.0});
}

Unitary Unitary::identity(int n) {
    Unitary u(n);
    for (int i = 0; i < u.dim(); ++i) u.at(i, i) = 1.0;
    return u;
}

std::vector<Complex> gate_matrix_1q(GateKind kind, double angle) {
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (kind) {
        case GateKind::I:
            return {1, 0, 0, 1};
        case GateKind::X:
            return {0, 1, 1, 0};
        case GateKind::Y:
            return {0, -kI, kI, 0};
        case GateKind::Z:
            return {1, 0, 0, -1};
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            return {r, r, r, -r};
        }
        case GateKind::RX:
            return {c, -kI * s, -kI * s, c};
        case GateKind::RY:
            return {c, -s, s, c};
        case GateKind::RZ:
            return {Complex{c, -s}, 0, 0, Complex{c, s}};
        default:
            throw Error(std::string("not a single-qubit gate: ") + gate_name(kind));
    }
}

std::vector<Complex> gate_matrix_2q(GateKind kind) {
    // Basis order |q1 q0> with the first operand as the low bit.
    switch (kind) {
        case GateKind::CNOT:
            // control = first operand (low bit), target = second.
            return {1, 0, 0, 0,  //
                    0, 0, 0, 1,  //
                    0, 0, 1, 0,  //
                    0, 1, 0, 0};
        case GateKind::CZ:
            return {1, 0, 0, 0,  //
                    0, 1, 0, 0,  //
                    0, 0, 1, 0,  //
                    0, 0, 0, -1};
        case GateKind::SWAP:
            return {1, 0, 0, 0,  //
                    0, 0, 1, 0,  //
                    0, 1, 0, 0,  //
                    0, 0, 0, 1};
        default:
            throw Error(std::string("not a two-qubit gate: ") + gate_name(kind));
    }
}

namespace {

// Applies a 2x2 matrix to every column of u at qubit position q.
void apply_1q(Unitary& u, const std::vector<Complex>& g, int q) {
    const int dim = u.dim();
    const int bit = 1 << q;
    for (int col = 0; col < dim; ++col) {
        for (int row = 0; row < dim; ++row) {
            if (row & bit) continue;
            Complex a = u.at(row, col);
            Complex b = u.at(row | bit, col);
            u.at(row, col) = g[0] * a + g[1] * b;
            u.at(row | bit, col) = g[2] * a + g[3] * b;
        }
    }
}

// Applies a 4x4 matrix at qubit positions (q0 = low bit of the gate
// basis, q1 = high bit) to every column.
void apply_2q(Unitary& u, const std::vector<Complex>& g, int q0, int q1) {
    const int dim = u.dim();
    const int b0 = 1 << q0;
    const int b1 = 1 << q1;
    for (int col = 0; col < dim; ++col) {
        for (int row = 0; row < dim; ++row) {
            if (row & (b0 | b1)) continue;
            int idx[4] = {row, row | b0, row | b1, row | b0 | b1};
            Complex in[4];
            for (int k = 0; k < 4; ++k) in[k] = u.at(idx[k], col);
            for (int r = 0; r < 4; ++r) {
                Complex acc = 0;
                for (int k = 0; k < 4; ++k) acc += g[r * 4 + k] * in[k];
                u.at(idx[r], col) = acc;
            }
        }
    }
}

}  // namespace

Unitary unitary_of(const Circuit& circuit) {
    if (!circuit.fully_bound())
        throw Error("unitary_of requires a fully bound circuit");
    if (!circuit.empty() && !circuit.is_physical())
        throw Error("unitary_of requires physical qubit indices");
    if (circuit.has_measurements())
        throw Error("unitary_of does not accept MEASURE instructions");
    const int n = circuit.max_physical_index() + 1;
    if (n > 10) throw Error("unitary_of limited to 10 qubits");

    Unitary u = Unitary::identity(std::max(n, 1));
    for (const Instruction& instr : circuit.instructions()) {
        if (instr.qubits.size() == 1) {
            const double angle =
                instr.params.empty() ? 0.0 : instr.params[0].value();
            apply_1q(u, gate_matrix_1q(instr.kind, angle), instr.qubits[0].index());
        } else {
            apply_2q(u, gate_matrix_2q(instr.kind), instr.qubits[0].index(),
                     instr.qubits[1].index());
        }
    }
    return u;
}

Unitary multiply(const Unitary& a, const Unitary& b) {
    if (a.n_qubits != b.n_qubits) throw Error("unitary dimension mismatch");
    Unitary out(a.n_qubits);
    const int dim = a.dim();
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k) {
            Complex aik = a.at(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < dim; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    return out;
}

std::vector<Complex> apply_unitary(const Unitary& u, const std::vector<Complex>& state) {
    if (static_cast<int>(state.size()) != u.dim())
        throw Error("state dimension mismatch");
    std::vector<Complex> out(state.size(), Complex{0.0, 0.0});
    for (int i = 0; i < u.dim(); ++i)
        for (int j = 0; j < u.dim(); ++j) out[i] += u.at(i, j) * state[j];
    return out;
}

bool equal_up_to_phase(const Unitary& a, const Unitary& b, double tol) {
    if (a.n_qubits != b.n_qubits) return false;
    // Align on b's largest entry.
    std::size_t best = 0;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < b.m.size(); ++i) {
        double mag = std::abs(b.m[i]);
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    if (best_mag < 1e-14) return false;
    Complex phase = a.m[best] / b.m[best];
    if (std::abs(std::abs(phase) - 1.0) > 1e-9) return false;
    for (std::size_t i = 0; i < a.m.size(); ++i)
        if (std::abs(a.m[i] - phase * b.m[i]) > tol) return false;
    return true;
}

double state_fidelity(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) throw Error("state dimension mismatch");
    Complex overlap = 0;
    for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
    return std::norm(overlap);
}

}  // namespace qcp
