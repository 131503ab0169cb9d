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

#include "qcp/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcp/program_text.hpp"
#include "qcp/rng.hpp"

namespace qcp {

namespace {

constexpr double kPi = std::numbers::pi;

const char* kSymTheta0 = "theta0";
const char* kSymTheta1 = "theta1";
const char* kSymW0 = "w0";
const char* kSymW1 = "w1";

}  // namespace

XorDataset xor_dataset(int per_cluster, double spread, std::uint64_t seed,
                       XorVariant variant) {
    if (per_cluster < 1) throw Error("per_cluster must be >= 1");
    if (spread < 0.0) throw Error("spread must be non-negative");

    XorDataset dataset;
    dataset.spread = spread;
    dataset.seed = seed;
    if (variant == XorVariant::Standard) {
        dataset.centers = {{{-kPi / 2, 0.0},
                            {kPi / 2, kPi},
                            {-kPi / 2, kPi},
                            {kPi / 2, 0.0}}};
    } else {
        dataset.centers = {{{-kPi / 2, -kPi / 2},
                            {kPi / 2, kPi / 2},
                            {-kPi / 2, kPi / 2},
                            {kPi / 2, -kPi / 2}}};
    }

    Rng rng(derive_seed(seed, 0x0c));
    for (int cluster = 0; cluster < 4; ++cluster) {
        const int label = cluster < 2 ? 0 : 1;
        for (int i = 0; i < per_cluster; ++i) {
            std::array<double, 2> point = dataset.centers[cluster];
            point[0] += (2.0 * rng.uniform01() - 1.0) * spread;
            point[1] += (2.0 * rng.uniform01() - 1.0) * spread;
            dataset.points.push_back(point);
            dataset.labels.push_back(label);
        }
    }
    return dataset;
}

Circuit classifier_circuit(const Param& theta0, const Param& theta1,
                           const Param& w0, const Param& w1) {
    const QubitRef q0 = QubitRef::abstract("q0");  // top / measured qubit
    const QubitRef q1 = QubitRef::abstract("q1");
    std::vector<Instruction> instrs;
    instrs.push_back(Instruction::gate(GateKind::RX, {q0}, {theta0}));
    instrs.push_back(Instruction::gate(GateKind::RX, {q1}, {theta1}));
    instrs.push_back(Instruction::gate(GateKind::CZ, {q0, q1}));
    instrs.push_back(Instruction::gate(GateKind::RX, {q0}, {w0}));
    instrs.push_back(Instruction::gate(GateKind::RX, {q1}, {w1}));
    instrs.push_back(Instruction::measure(q0, 0));
    return Circuit(std::move(instrs));
}

double p1_analytic(double theta0, double theta1, double w0) {
    const double ct = std::cos(theta0 / 2), st = std::sin(theta0 / 2);
    const double cw = std::cos(w0 / 2), sw = std::sin(w0 / 2);
    double p1 = ct * ct * sw * sw + st * st * cw * cw +
                0.5 * std::sin(w0) * std::sin(theta0) * std::cos(theta1);
    // Guard against sub-epsilon rounding outside [0,1].
    return std::clamp(p1, 0.0, 1.0);
}

double cross_entropy_loss(const std::vector<double>& p1s,
                          const std::vector<int>& labels, double eps) {
    if (p1s.size() != labels.size())
        throw Error("p1 list and label list differ in length");
    if (!(eps > 0.0 && eps < 0.5)) throw Error("eps must lie in (0, 0.5)");
    double loss = 0.0;
    for (std::size_t i = 0; i < p1s.size(); ++i) {
        const double p = std::clamp(p1s[i], eps, 1.0 - eps);
        loss += labels[i] == 1 ? -std::log(p) : std::log(p);
    }
    return loss;
}

ClassifierEvaluator::ClassifierEvaluator(XorDataset dataset,
                                         ClassifierConfig config)
    : dataset_(std::move(dataset)), config_(std::move(config)) {
    if (config_.shots < 1) throw Error("shots must be >= 1");
    if (!config_.backend) throw Error("classifier evaluation needs a backend");
    compiled_ = compile(
        classifier_circuit(Param::symbol(kSymTheta0), Param::symbol(kSymTheta1),
                           Param::symbol(kSymW0), Param::symbol(kSymW1)),
        config_.backend->device());
}

double ClassifierEvaluator::p1(const std::array<double, 2>& input,
                               const std::array<double, 2>& w,
                               std::uint64_t seed) const {
    Circuit bound = bind_parameters(compiled_.circuit,
                                    {{kSymTheta0, input[0]},
                                     {kSymTheta1, input[1]},
                                     {kSymW0, w[0]},
                                     {kSymW1, w[1]}});
    if (config_.exact) {
        int measured_qubit = -1;
        for (const Instruction& instr : bound.instructions())
            if (instr.is_measure()) measured_qubit = instr.qubits[0].index();
        auto marginal = probabilities(run_statevector(bound), {measured_qubit});
        auto it = marginal.find(1);
        return it == marginal.end() ? 0.0 : it->second;
    }
    JobRequest request;
    request.program = print_program(bound);
    request.shots = config_.shots;
    request.noise = config_.noise;
    request.seed = seed;
    return config_.backend->execute(request).frequency(1);
}

std::vector<double> ClassifierEvaluator::dataset_p1s(
    const std::array<double, 2>& w, std::uint64_t stream) const {
    const std::uint64_t stream_seed = derive_seed(config_.seed, stream);
    std::vector<double> p1s;
    p1s.reserve(dataset_.points.size());
    for (std::size_t i = 0; i < dataset_.points.size(); ++i)
        p1s.push_back(p1(dataset_.points[i], w, derive_seed(stream_seed, i)));
    return p1s;
}

double ClassifierEvaluator::loss(const std::array<double, 2>& w,
                                 std::uint64_t stream) const {
    return cross_entropy_loss(dataset_p1s(w, stream), dataset_.labels,
                              config_.eps);
}

double ClassifierEvaluator::accuracy(const std::array<double, 2>& w,
                                     std::uint64_t stream) const {
    const std::vector<double> p1s = dataset_p1s(w, stream);
    int correct = 0;
    for (std::size_t i = 0; i < p1s.size(); ++i)
        correct += (p1s[i] > 0.5 ? 1 : 0) == dataset_.labels[i];
    return static_cast<double>(correct) / static_cast<double>(p1s.size());
}

NelderMeadOptions default_classifier_train_options() {
    NelderMeadOptions options;
    options.initial_step = 0.5;
    options.max_evals = 120;
    options.xtol = 1e-3;
    options.ftol = 1e-3;
    options.noise_floor = 0.0;  // filled from the shot budget when sampling
    return options;
}

TrainReport classifier_train(const XorDataset& dataset,
                             const ClassifierConfig& config,
                             std::array<double, 2> w_init,
                             NelderMeadOptions options) {
    ClassifierEvaluator evaluator(dataset, config);
    if (options.noise_floor == 0.0 && !config.exact) {
        // Log-loss shot noise scales like n_points / sqrt(shots); treat
        // anything below that as indistinguishable from noise.
        options.noise_floor = static_cast<double>(dataset.points.size()) /
                              std::sqrt(static_cast<double>(config.shots));
    }

    std::uint64_t stream = 0;
    auto objective = [&](const std::vector<double>& x) {
        return evaluator.loss({x[0], x[1]}, stream++);
    };

    TrainReport report;
    report.optimize =
        nelder_mead(objective, {w_init[0], w_init[1]}, options);
    const std::array<double, 2> best = {report.optimize.best_params[0],
                                        report.optimize.best_params[1]};

    // One fresh evaluation at the optimum provides both the reported
    // loss and the thresholded accuracy.
    const std::vector<double> p1s = evaluator.dataset_p1s(best, stream++);
    report.train_loss = cross_entropy_loss(p1s, dataset.labels, config.eps);
    int correct = 0;
    for (std::size_t i = 0; i < p1s.size(); ++i)
        correct += (p1s[i] > 0.5 ? 1 : 0) == dataset.labels[i];
    report.accuracy =
        static_cast<double>(correct) / static_cast<double>(p1s.size());
    report.shots = config.shots;
    report.seed = config.seed;
    report.config_echo = {
        {"experiment", "classifier_train"},
        {"shots", config.shots},
        {"exact", config.exact},
        {"seed", config.seed},
        {"eps", config.eps},
        {"w_init", {w_init[0], w_init[1]}},
        {"max_evals", options.max_evals},
        {"device", config.backend->device().name},
    };
    return report;
}

DecisionGrid decision_grid(const std::function<double(double, double)>& p1_of,
                           int points) {
    if (points < 2) throw Error("decision_grid needs at least two points");
    DecisionGrid grid;
    grid.points = points;
    grid.axis.resize(points);
    for (int i = 0; i < points; ++i)
        grid.axis[i] = -kPi + 2.0 * kPi * static_cast<double>(i) /
                                  static_cast<double>(points - 1);
    grid.p1.reserve(static_cast<std::size_t>(points) * points);
    for (int i = 0; i < points; ++i)
        for (int j = 0; j < points; ++j)
            grid.p1.push_back(p1_of(grid.axis[i], grid.axis[j]));
    return grid;
}

std::function<double(double, double)> analytic_p1_fn(double w0) {
    return [w0](double theta0, double theta1) {
        return p1_analytic(theta0, theta1, w0);
    };
}

}  // namespace qcp
