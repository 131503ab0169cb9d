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

#include <memory>

#include "qcp/backend.hpp"
#include "qcp/compiler.hpp"
#include "qcp/report.hpp"

namespace qcp {

/// The 2-1-2 quantum autoencoder experiment. The dataset is a family of
/// two-qubit states prepared by RY(phi) then CNOT; the single-parameter
/// encoder compresses them onto one qubit, and the cost is the negated
/// success frequency averaged over a subset.

struct QaeDataset {
    std::vector<double> phis;
    std::vector<int> train_indices;
    std::vector<int> test_indices;
    std::uint64_t seed = 0;
};

/// Equally spaced phis on [lo, hi] inclusive; n_train indices drawn
/// uniformly without replacement, the rest form the test set.
QaeDataset qae_dataset(int n_points = 40, double lo = 0.0,
                       double hi = 3.141592653589793, int n_train = 8,
                       std::uint64_t seed = 0);

enum class QaeMode { Full, Halfway };
enum class Subset { Train, Test };

struct QaeConfig {
    QaeMode mode = QaeMode::Halfway;
    int shots = 10000;
    std::shared_ptr<Backend> backend;
    int trash_value = 0;  // the reference trash state, fixed |0>
    /// Exact statevector probabilities instead of shot sampling.
    bool exact = false;
    std::optional<NoiseModel> noise;
    std::uint64_t seed = 0;  // master seed for all shot streams
};

/// Builds the abstract QAE circuit for one data point.
/// Halfway (2 qubits): RY(phi) q0; CNOT q0 q1; CNOT q0 q1; RY(theta) q1;
/// MEASURE q1. Full (3 qubits) continues without the measurement:
/// RY(-theta) q2; CNOT q0 q2; CNOT q0 q2; RY(-phi) q0; MEASURE q0, q2.
Circuit qae_build_circuit(double phi, const Param& theta, QaeMode mode);

struct CostEstimate {
    double loss = 0.0;
    double stderr_of_mean = 0.0;
};

/// Compiles each data point's circuit once (theta symbolic) and binds
/// per evaluation, so optimizer iterations reuse the compiled form.
class QaeCostEvaluator {
  public:
    QaeCostEvaluator(QaeDataset dataset, QaeConfig config);

    /// Mean negated success frequency over the subset. `stream` selects
    /// an independent seed substream; reuse a stream to reproduce an
    /// evaluation exactly.
    CostEstimate cost(double theta, Subset subset, std::uint64_t stream) const;

    const QaeDataset& dataset() const { return dataset_; }
    const QaeConfig& config() const { return config_; }
    const CompiledCircuit& compiled(int point_index) const;

  private:
    QaeDataset dataset_;
    QaeConfig config_;
    std::vector<CompiledCircuit> compiled_;  // one per phi
};

/// One-shot convenience wrapper around QaeCostEvaluator.
CostEstimate qae_cost(double theta, const QaeDataset& dataset, Subset subset,
                      const QaeConfig& config);

/// Training-subset sweep of the loss over `points` equally spaced theta
/// values on [lo, hi].
SweepResult qae_sweep(const QaeDataset& dataset, const QaeConfig& config,
                      int points = 50, double lo = -3.141592653589793,
                      double hi = 3.141592653589793);

NelderMeadOptions default_qae_train_options();

/// Nelder-Mead minimization of the training loss from theta0 = pi/1.2,
/// with the test loss evaluated at the optimum.
TrainReport qae_train(const QaeDataset& dataset, const QaeConfig& config,
                      double theta0 = 3.141592653589793 / 1.2,
                      NelderMeadOptions options = default_qae_train_options());

}  // namespace qcp
