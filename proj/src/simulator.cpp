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

#include "qcp/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "qcp/rng.hpp"

namespace qcp {

namespace {

using cd = std::complex<double>;

// In-place specialized kernels. These are intentionally a separate
// implementation from the unitary oracle's generic matrix embedding.

void apply_matrix_1q(StateVector& s, int q, cd m00, cd m01, cd m10, cd m11) {
    const std::size_t bit = std::size_t{1} << q;
    const std::size_t dim = s.amplitudes.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        cd a = s.amplitudes[i];
        cd b = s.amplitudes[i | bit];
        s.amplitudes[i] = m00 * a + m01 * b;
        s.amplitudes[i | bit] = m10 * a + m11 * b;
    }
}

void apply_x(StateVector& s, int q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        if (!(i & bit)) std::swap(s.amplitudes[i], s.amplitudes[i | bit]);
}

void apply_y(StateVector& s, int q) {
    apply_matrix_1q(s, q, 0, cd{0, -1}, cd{0, 1}, 0);
}

void apply_z(StateVector& s, int q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        if (i & bit) s.amplitudes[i] = -s.amplitudes[i];
}

void apply_cnot(StateVector& s, int control, int target) {
    const std::size_t cb = std::size_t{1} << control;
    const std::size_t tb = std::size_t{1} << target;
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        if ((i & cb) && !(i & tb)) std::swap(s.amplitudes[i], s.amplitudes[i | tb]);
}

void apply_cz(StateVector& s, int a, int b) {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        if ((i & mask) == mask) s.amplitudes[i] = -s.amplitudes[i];
}

void apply_swap(StateVector& s, int a, int b) {
    const std::size_t ab = std::size_t{1} << a;
    const std::size_t bb = std::size_t{1} << b;
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        if ((i & ab) && !(i & bb))
            std::swap(s.amplitudes[i], s.amplitudes[(i & ~ab) | bb]);
}

void apply_gate(StateVector& s, const Instruction& instr) {
    switch (instr.kind) {
        case GateKind::I:
            return;
        case GateKind::X:
            return apply_x(s, instr.qubits[0].index());
        case GateKind::Y:
            return apply_y(s, instr.qubits[0].index());
        case GateKind::Z:
            return apply_z(s, instr.qubits[0].index());
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            return apply_matrix_1q(s, instr.qubits[0].index(), r, r, r, -r);
        }
        case GateKind::RX: {
            const double t = instr.params[0].value();
            const cd is{0.0, -std::sin(t / 2)};
            return apply_matrix_1q(s, instr.qubits[0].index(), std::cos(t / 2), is,
                                   is, std::cos(t / 2));
        }
        case GateKind::RY: {
            const double t = instr.params[0].value();
            return apply_matrix_1q(s, instr.qubits[0].index(), std::cos(t / 2),
                                   -std::sin(t / 2), std::sin(t / 2),
                                   std::cos(t / 2));
        }
        case GateKind::RZ: {
            const double t = instr.params[0].value();
            return apply_matrix_1q(s, instr.qubits[0].index(),
                                   cd{std::cos(t / 2), -std::sin(t / 2)}, 0, 0,
                                   cd{std::cos(t / 2), std::sin(t / 2)});
        }
        case GateKind::CNOT:
            return apply_cnot(s, instr.qubits[0].index(), instr.qubits[1].index());
        case GateKind::CZ:
            return apply_cz(s, instr.qubits[0].index(), instr.qubits[1].index());
        case GateKind::SWAP:
            return apply_swap(s, instr.qubits[0].index(), instr.qubits[1].index());
        case GateKind::Measure:
            return;  // deferred; terminal by the circuit invariant
    }
}

void apply_pauli(StateVector& s, int q, int pauli) {
    // 1 = X, 2 = Y, 3 = Z
    if (pauli == 1) apply_x(s, q);
    else if (pauli == 2) apply_y(s, q);
    else if (pauli == 3) apply_z(s, q);
}

void check_runnable(const Circuit& circuit) {
    if (!circuit.fully_bound())
        throw Error("cannot simulate a circuit with unbound symbols");
    if (!circuit.empty() && !circuit.is_physical())
        throw Error("cannot simulate a circuit with abstract qubits");
    if (circuit.max_physical_index() + 1 > 24)
        throw Error("statevector simulation limited to 24 qubits");
}

// Measured qubit index per classical bit, in ascending classical-bit
// order (result bit i corresponds to the i-th smallest classical index).
std::vector<int> measured_qubits(const Circuit& circuit) {
    std::vector<std::pair<int, int>> pairs;  // (classical bit, qubit)
    for (const Instruction& instr : circuit.instructions())
        if (instr.is_measure())
            pairs.emplace_back(instr.classical_bit, instr.qubits[0].index());
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> qubits;
    qubits.reserve(pairs.size());
    for (auto& [bit, q] : pairs) qubits.push_back(q);
    return qubits;
}

// Cumulative distribution over the packed outcomes of the given qubits.
std::vector<double> outcome_cdf(const StateVector& state,
                                const std::vector<int>& qubits) {
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        double p = std::norm(state.amplitudes[i]);
        if (p == 0.0) continue;
        std::size_t key = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j)
            key |= ((i >> qubits[j]) & 1) << j;
        probs[key] += p;
    }
    double acc = 0.0;
    for (double& p : probs) {
        acc += p;
        p = acc;
    }
    return probs;
}

std::uint64_t draw_outcome(const std::vector<double>& cdf, Rng& rng) {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    return static_cast<std::uint64_t>(it - cdf.begin());
}

}  // namespace

StateVector StateVector::zero_state(int n) {
    StateVector s;
    s.n_qubits = n;
    s.amplitudes.assign(std::size_t{1} << n, cd{0.0, 0.0});
    s.amplitudes[0] = 1.0;
    return s;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const cd& a : amplitudes) acc += std::norm(a);
    return std::sqrt(acc);
}

void NoiseModel::validate() const {
    for (double p : {p1, p2, readout_flip})
        if (p < 0.0 || p > 1.0 || !std::isfinite(p))
            throw Error("noise probabilities must lie in [0,1]");
}

std::map<std::uint64_t, int> ShotResult::counts() const {
    std::map<std::uint64_t, int> hist;
    for (std::uint64_t w : words) ++hist[w];
    return hist;
}

double ShotResult::frequency(std::uint64_t pattern) const {
    if (words.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::uint64_t w : words) hits += (w == pattern);
    return static_cast<double>(hits) / static_cast<double>(words.size());
}

StateVector run_statevector(const Circuit& circuit) {
    check_runnable(circuit);
    const int n = std::max(circuit.max_physical_index() + 1, 1);
    StateVector state = StateVector::zero_state(n);
    for (const Instruction& instr : circuit.instructions()) apply_gate(state, instr);
    return state;
}

std::map<std::uint64_t, double> probabilities(const StateVector& state,
                                              const std::vector<int>& qubits) {
    for (int q : qubits)
        if (q < 0 || q >= state.n_qubits)
            throw Error("qubit index " + std::to_string(q) + " out of range");
    std::map<std::uint64_t, double> marginal;
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        double p = std::norm(state.amplitudes[i]);
        if (p == 0.0) continue;
        std::uint64_t key = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j)
            key |= ((i >> qubits[j]) & 1) << j;
        marginal[key] += p;
    }
    return marginal;
}

ShotResult sample_shots(const Circuit& circuit, int shots,
                        const std::optional<NoiseModel>& noise,
                        std::uint64_t seed) {
    check_runnable(circuit);
    if (shots < 1) throw Error("shot count must be positive");
    if (!circuit.has_measurements())
        throw Error("cannot sample a circuit without measurements");
    if (noise) noise->validate();

    const std::vector<int> qubits = measured_qubits(circuit);
    const int n_bits = static_cast<int>(qubits.size());
    if (n_bits > 24) throw Error("too many measured bits to sample");

    ShotResult result;
    result.n_bits = n_bits;
    result.seed = seed;
    result.words.reserve(shots);
    Rng rng(seed);

    const bool gate_noise = noise && (noise->p1 > 0.0 || noise->p2 > 0.0);
    const double readout = noise ? noise->readout_flip : 0.0;

    auto flip_bits = [&](std::uint64_t word) {
        if (readout <= 0.0) return word;
        for (int i = 0; i < n_bits; ++i)
            if (rng.bernoulli(readout)) word ^= std::uint64_t{1} << i;
        return word;
    };

    if (!gate_noise) {
        const StateVector state = run_statevector(circuit);
        const std::vector<double> cdf = outcome_cdf(state, qubits);
        for (int k = 0; k < shots; ++k)
            result.words.push_back(flip_bits(draw_outcome(cdf, rng)));
        return result;
    }

    // One stochastic Pauli trajectory per shot: after each gate, with
    // probability p1 (p2), hit its qubit(s) with a uniformly random
    // non-identity Pauli.
    const int n = std::max(circuit.max_physical_index() + 1, 1);
    for (int k = 0; k < shots; ++k) {
        StateVector state = StateVector::zero_state(n);
        for (const Instruction& instr : circuit.instructions()) {
            if (instr.is_measure()) continue;
            apply_gate(state, instr);
            if (instr.qubits.size() == 1) {
                if (noise->p1 > 0.0 && rng.bernoulli(noise->p1))
                    apply_pauli(state, instr.qubits[0].index(),
                                1 + static_cast<int>(rng.below(3)));
            } else if (noise->p2 > 0.0 && rng.bernoulli(noise->p2)) {
                const int pair = 1 + static_cast<int>(rng.below(15));
                apply_pauli(state, instr.qubits[0].index(), pair & 3);
                apply_pauli(state, instr.qubits[1].index(), pair >> 2);
            }
        }
        const std::vector<double> cdf = outcome_cdf(state, qubits);
        result.words.push_back(flip_bits(draw_outcome(cdf, rng)));
    }
    return result;
}

}  // namespace qcp
