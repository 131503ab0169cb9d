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
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qcp/circuit.hpp"

namespace qcp {

/// Amplitudes of an n-qubit register in little-endian order: qubit 0 is
/// the least significant bit of the basis index.
struct StateVector {
    int n_qubits = 0;
    std::vector<std::complex<double>> amplitudes;

    static StateVector zero_state(int n);
    double norm() const;
};

/// Stochastic error model: symmetric depolarizing after each gate plus
/// independent readout bitflips.
struct NoiseModel {
    double p1 = 0.0;            // per single-qubit gate
    double p2 = 0.0;            // per two-qubit gate
    double readout_flip = 0.0;  // per measured bit

    bool is_zero() const { return p1 == 0.0 && p2 == 0.0 && readout_flip == 0.0; }
    void validate() const;
};

/// Measurement outcomes of repeated circuit execution. Shot k's bits are
/// packed little-endian: bit i of words[k] is the outcome recorded into
/// classical bit rank i (classical indices sorted ascending).
struct ShotResult {
    int n_bits = 0;
    std::vector<std::uint64_t> words;
    std::uint64_t seed = 0;

    int shots() const { return static_cast<int>(words.size()); }
    int bit(int shot, int i) const { return (words[shot] >> i) & 1; }
    /// Histogram of outcomes, keyed by the packed bit pattern.
    std::map<std::uint64_t, int> counts() const;
    /// Fraction of shots whose pattern equals `pattern`.
    double frequency(std::uint64_t pattern) const;

    bool operator==(const ShotResult& other) const = default;
};

/// Evolves |0...0> through the circuit; MEASURE instructions are ignored
/// for evolution. Pre: fully bound, physical, n <= 24.
StateVector run_statevector(const Circuit& circuit);

/// Marginal distribution over the listed qubits: bit j of the returned
/// key is the value of qubits[j].
std::map<std::uint64_t, double> probabilities(const StateVector& state,
                                              const std::vector<int>& qubits);

/// Samples measurement outcomes. Deterministic for a given seed.
/// Noiseless (or all-zero noise): one statevector run, shots drawn from
/// the exact marginal over the measured qubits. With gate noise: one
/// stochastic Pauli trajectory per shot. Readout flips apply per bit in
/// both paths. Pre: fully bound, physical, at least one MEASURE.
ShotResult sample_shots(const Circuit& circuit, int shots,
                        const std::optional<NoiseModel>& noise,
                        std::uint64_t seed);

}  // namespace qcp
