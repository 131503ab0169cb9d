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

#include "qcp/qae.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qcp/program_text.hpp"
#include "qcp/rng.hpp"

namespace qcp {

namespace {

const std::string kThetaSymbol = "theta";

// Success frequency of one bound compiled circuit: the probability (or
// sampled frequency) that every measured bit reads the target value.
double success_frequency(const CompiledCircuit& compiled, double theta,
                         const QaeConfig& config, std::uint64_t seed,
                         std::uint64_t target_pattern) {
    Circuit bound = compiled.circuit;
    if (bound.free_symbols().count(kThetaSymbol))
        bound = bind_parameters(bound, {{kThetaSymbol, theta}});
    if (config.exact) {
        std::vector<std::pair<int, int>> measures;  // (classical bit, qubit)
        for (const Instruction& instr : bound.instructions())
            if (instr.is_measure())
                measures.emplace_back(instr.classical_bit,
                                      instr.qubits[0].index());
        std::sort(measures.begin(), measures.end());
        std::vector<int> qubits;
        for (auto& [bit, q] : measures) qubits.push_back(q);
        auto marginal = probabilities(run_statevector(bound), qubits);
        auto it = marginal.find(target_pattern);
        return it == marginal.end() ? 0.0 : it->second;
    }
    JobRequest request;
    request.program = print_program(bound);
    request.shots = config.shots;
    request.noise = config.noise;
    request.seed = seed;
    return config.backend->execute(request).frequency(target_pattern);
}

}  // namespace

QaeDataset qae_dataset(int n_points, double lo, double hi, int n_train,
                       std::uint64_t seed) {
    if (n_points < 2) throw Error("qae_dataset needs at least two points");
    if (n_train < 1 || n_train >= n_points)
        throw Error("training set size must be in [1, n_points)");

    QaeDataset dataset;
    dataset.seed = seed;
    dataset.phis.resize(n_points);
    for (int i = 0; i < n_points; ++i)
        dataset.phis[i] = lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(n_points - 1);

    // Partial Fisher-Yates over the index array gives a uniform draw
    // without replacement.
    std::vector<int> indices(n_points);
    for (int i = 0; i < n_points; ++i) indices[i] = i;
    Rng rng(derive_seed(seed, 0xda7a));
    for (int i = 0; i < n_train; ++i) {
        int j = i + static_cast<int>(rng.below(n_points - i));
        std::swap(indices[i], indices[j]);
    }
    dataset.train_indices.assign(indices.begin(), indices.begin() + n_train);
    std::sort(dataset.train_indices.begin(), dataset.train_indices.end());
    dataset.test_indices.assign(indices.begin() + n_train, indices.end());
    std::sort(dataset.test_indices.begin(), dataset.test_indices.end());
    return dataset;
}

Circuit qae_build_circuit(double phi, const Param& theta, QaeMode mode) {
    const QubitRef q0 = QubitRef::abstract("q0");
    const QubitRef q1 = QubitRef::abstract("q1");
    std::vector<Instruction> instrs;

    // State preparation S(phi), then encoder U(theta).
    instrs.push_back(Instruction::gate(GateKind::RY, {q0}, {Param::constant(phi)}));
    instrs.push_back(Instruction::gate(GateKind::CNOT, {q0, q1}));
    instrs.push_back(Instruction::gate(GateKind::CNOT, {q0, q1}));
    instrs.push_back(Instruction::gate(GateKind::RY, {q1}, {theta}));

    if (mode == QaeMode::Halfway) {
        instrs.push_back(Instruction::measure(q1, 0));
        return Circuit(std::move(instrs));
    }

    // Full: decoder U^dagger on (q0, refresh q2), then S^dagger, then
    // measure the reconstructed register (q0, q2).
    const QubitRef q2 = QubitRef::abstract("q2");
    Param minus_theta = theta.is_symbol()
                            ? Param::symbol(theta.symbol_name(), !theta.negated())
                            : Param::constant(-theta.value());
    instrs.push_back(Instruction::gate(GateKind::RY, {q2}, {minus_theta}));
    instrs.push_back(Instruction::gate(GateKind::CNOT, {q0, q2}));
    instrs.push_back(Instruction::gate(GateKind::CNOT, {q0, q2}));
    instrs.push_back(
        Instruction::gate(GateKind::RY, {q0}, {Param::constant(-phi)}));
    instrs.push_back(Instruction::measure(q0, 0));
    instrs.push_back(Instruction::measure(q2, 1));
    return Circuit(std::move(instrs));
}

QaeCostEvaluator::QaeCostEvaluator(QaeDataset dataset, QaeConfig config)
    : dataset_(std::move(dataset)), config_(std::move(config)) {
    if (config_.shots < 1) throw Error("shots must be >= 1");
    if (config_.trash_value != 0)
        throw Error("the trash reference state is fixed to |0>");
    if (!config_.backend) throw Error("qae evaluation needs a backend");
    const DeviceSpec& device = config_.backend->device();
    compiled_.reserve(dataset_.phis.size());
    for (double phi : dataset_.phis)
        compiled_.push_back(
            compile(qae_build_circuit(phi, Param::symbol(kThetaSymbol),
                                      config_.mode),
                    device));
}

const CompiledCircuit& QaeCostEvaluator::compiled(int point_index) const {
    return compiled_.at(point_index);
}

CostEstimate QaeCostEvaluator::cost(double theta, Subset subset,
                                    std::uint64_t stream) const {
    const std::vector<int>& indices = subset == Subset::Train
                                          ? dataset_.train_indices
                                          : dataset_.test_indices;
    const std::uint64_t stream_seed = derive_seed(config_.seed, stream);

    std::vector<double> successes;
    successes.reserve(indices.size());
    for (int index : indices)
        successes.push_back(success_frequency(
            compiled_[index], theta, config_,
            derive_seed(stream_seed, static_cast<std::uint64_t>(index)),
            /*target_pattern=*/0));

    double mean = 0.0;
    for (double s : successes) mean += s;
    mean /= static_cast<double>(successes.size());

    double variance = 0.0;
    if (successes.size() > 1) {
        for (double s : successes) variance += (s - mean) * (s - mean);
        variance /= static_cast<double>(successes.size() - 1);
    }
    CostEstimate estimate;
    estimate.loss = -mean;
    estimate.stderr_of_mean =
        std::sqrt(variance / static_cast<double>(successes.size()));
    return estimate;
}

CostEstimate qae_cost(double theta, const QaeDataset& dataset, Subset subset,
                      const QaeConfig& config) {
    return QaeCostEvaluator(dataset, config).cost(theta, subset, 0);
}

SweepResult qae_sweep(const QaeDataset& dataset, const QaeConfig& config,
                      int points, double lo, double hi) {
    QaeCostEvaluator evaluator(dataset, config);
    // Seed substream keyed on the angle bits: deterministic, replayable,
    // and independent of evaluation order under parallel sweeps.
    SweepObjective objective = [&](double theta) {
        CostEstimate e = evaluator.cost(theta, Subset::Train,
                                        std::bit_cast<std::uint64_t>(theta));
        return std::pair<double, double>(e.loss, e.stderr_of_mean);
    };
    return grid_sweep(objective, lo, hi, points, /*parallel=*/true);
}

NelderMeadOptions default_qae_train_options() {
    NelderMeadOptions options;
    options.initial_step = 0.5;
    options.max_evals = 80;
    options.xtol = 1e-3;
    options.ftol = 1e-4;
    options.noise_floor = 0.0;  // filled from the shot budget in qae_train
    return options;
}

TrainReport qae_train(const QaeDataset& dataset, const QaeConfig& config,
                      double theta0, NelderMeadOptions options) {
    QaeCostEvaluator evaluator(dataset, config);
    if (options.noise_floor == 0.0 && !config.exact) {
        // Worst-case binomial sigma of the subset mean, doubled.
        options.noise_floor =
            1.0 / (std::sqrt(static_cast<double>(config.shots)) *
                   std::sqrt(static_cast<double>(dataset.train_indices.size())));
    }

    std::uint64_t stream = 0;
    auto objective = [&](const std::vector<double>& x) {
        return evaluator.cost(x[0], Subset::Train, stream++).loss;
    };

    TrainReport report;
    report.optimize = nelder_mead(objective, {theta0}, options);
    const double best = report.optimize.best_params[0];

    CostEstimate train = evaluator.cost(best, Subset::Train, stream++);
    CostEstimate test = evaluator.cost(best, Subset::Test, stream++);
    report.train_loss = train.loss;
    report.train_stderr = train.stderr_of_mean;
    report.test_loss = test.loss;
    report.test_stderr = test.stderr_of_mean;
    report.shots = config.shots;
    report.seed = config.seed;
    report.config_echo = {
        {"experiment", "qae_train"},
        {"mode", config.mode == QaeMode::Full ? "full" : "halfway"},
        {"shots", config.shots},
        {"exact", config.exact},
        {"seed", config.seed},
        {"theta0", theta0},
        {"max_evals", options.max_evals},
        {"device", config.backend->device().name},
    };
    return report;
}

}  // namespace qcp
