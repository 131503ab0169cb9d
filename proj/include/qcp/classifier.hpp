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

#include <array>
#include <functional>
#include <memory>

#include "qcp/backend.hpp"
#include "qcp/compiler.hpp"
#include "qcp/report.hpp"

namespace qcp {

/// Two-qubit variational classifier for the XOR-style dataset: inputs
/// are encoded as X rotations, a CZ entangles, X rotations with trained
/// weights follow, and the label statistic is p1 = P(top qubit reads 1).

enum class XorVariant { Standard, Shifted };

struct XorDataset {
    std::vector<std::array<double, 2>> points;  // (theta0, theta1)
    std::vector<int> labels;                    // 0 or 1, by cluster
    std::array<std::array<double, 2>, 4> centers;
    double spread = 0.0;
    std::uint64_t seed = 0;
};

/// per_cluster points uniform in a square of half-width `spread` around
/// each of the four cluster centers. Standard variant: label-0 clusters
/// at (-pi/2, 0), (pi/2, pi); label-1 at (-pi/2, pi), (pi/2, 0). The
/// shifted variant moves every center by -pi/2 in theta1.
XorDataset xor_dataset(int per_cluster = 10, double spread = 0.3,
                       std::uint64_t seed = 0,
                       XorVariant variant = XorVariant::Standard);

/// RX(theta0) q0; RX(theta1) q1; CZ q0 q1; RX(w0) q0; RX(w1) q1;
/// MEASURE q0 -> 0.
Circuit classifier_circuit(const Param& theta0, const Param& theta1,
                           const Param& w0, const Param& w1);

/// Closed form of p1 for the circuit above:
/// cos^2(t0/2) sin^2(w0/2) + sin^2(t0/2) cos^2(w0/2)
///   + (1/2) sin(w0) sin(t0) cos(t1). w1 does not appear.
double p1_analytic(double theta0, double theta1, double w0);

/// -(sum_{label=1} log p1 - sum_{label=0} log p1), with p1 clamped to
/// [eps, 1-eps] before the logs. Deliberately the asymmetric form: the
/// label-0 term rewards small p1 without bound, and only the clamp
/// keeps it finite.
double cross_entropy_loss(const std::vector<double>& p1s,
                          const std::vector<int>& labels, double eps = 1e-6);

struct ClassifierConfig {
    int shots = 10000;
    std::shared_ptr<Backend> backend;
    bool exact = false;  // statevector p1 instead of shot estimates
    std::optional<NoiseModel> noise;
    std::uint64_t seed = 0;
    double eps = 1e-6;
};

/// Caches the one symbolically compiled circuit; every p1 estimate is a
/// parameter binding on it.
class ClassifierEvaluator {
  public:
    ClassifierEvaluator(XorDataset dataset, ClassifierConfig config);

    double p1(const std::array<double, 2>& input, const std::array<double, 2>& w,
              std::uint64_t seed) const;
    std::vector<double> dataset_p1s(const std::array<double, 2>& w,
                                    std::uint64_t stream) const;
    double loss(const std::array<double, 2>& w, std::uint64_t stream) const;
    double accuracy(const std::array<double, 2>& w, std::uint64_t stream) const;

    const XorDataset& dataset() const { return dataset_; }
    const CompiledCircuit& compiled() const { return compiled_; }

  private:
    XorDataset dataset_;
    ClassifierConfig config_;
    CompiledCircuit compiled_;
};

NelderMeadOptions default_classifier_train_options();

/// Nelder-Mead over (w0, w1) minimizing the cross entropy of estimated
/// p1 values; the report carries the re-evaluated loss and thresholded
/// accuracy at the optimum.
TrainReport classifier_train(
    const XorDataset& dataset, const ClassifierConfig& config,
    std::array<double, 2> w_init = {0.1, 0.1},
    NelderMeadOptions options = default_classifier_train_options());

struct DecisionGrid {
    std::vector<double> axis;  // shared theta0/theta1 axis, inclusive
    std::vector<double> p1;    // row-major, theta0 outer, theta1 inner
    int points = 0;
};

/// Evaluates p1 on an inclusive [-pi, pi]^2 grid. The caller chooses
/// what p1 means (analytic closed form or backend estimate).
DecisionGrid decision_grid(const std::function<double(double, double)>& p1_of,
                           int points);

/// Convenience p1 functions for decision_grid.
std::function<double(double, double)> analytic_p1_fn(double w0);

}  // namespace qcp
