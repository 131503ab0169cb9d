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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL
// line; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "qcp/classifier.hpp"
#include "qcp/job_service.hpp"
#include "qcp/program_text.hpp"
#include "qcp/qae.hpp"
#include "qcp/result_file.hpp"
#include "qcp/runs.hpp"

#include "test_helpers.hpp"

using namespace qcp;
using qcp::testing::kPi;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Failure(message);
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

std::shared_ptr<LocalBackend> agave_backend() {
    return std::make_shared<LocalBackend>(DeviceSpec::agave8());
}

double analytic_qae_loss(double theta) {
    const double c = std::cos(theta / 2.0);
    return -c * c;
}

// ---- 1. Compiler soundness over random circuits ----------------------

void criterion_compiler_soundness() {
    const DeviceSpec agave = DeviceSpec::agave8();
    Rng rng(20260810);
    for (int trial = 0; trial < 200; ++trial) {
        testing::RandomCircuitOptions opts;
        opts.n_qubits = 2 + static_cast<int>(rng.below(3));  // up to 4 qubits
        opts.n_gates = 1 + static_cast<int>(rng.below(20));
        opts.abstract_refs = trial % 2 == 0;
        Circuit original = testing::random_circuit(rng, opts);
        CompiledCircuit compiled = compile(original, agave);

        for (const Instruction& instr : compiled.circuit.instructions()) {
            require(agave.native.accepts(instr),
                    "non-native gate in compiled circuit");
            if (instr.qubits.size() == 2)
                require(agave.has_edge(instr.qubits[0].index(),
                                       instr.qubits[1].index()),
                        "two-qubit gate off the coupling graph");
        }

        Circuit original_physical = original;
        std::map<int, int> relabel;
        if (opts.abstract_refs) {
            std::map<std::string, int> numbering;
            int i = 0;
            for (const auto& name : original.abstract_names()) {
                relabel[i] = compiled.final_permutation.at(
                    compiled.initial_map.at(name));
                numbering[name] = i++;
            }
            original_physical = assign_qubits(original, numbering);
        } else {
            relabel = compiled.final_permutation;
        }
        StateVector reference = run_statevector(original_physical);
        StateVector actual = run_statevector(compiled.circuit);
        const double fidelity = testing::relabeled_fidelity(
            reference.amplitudes, reference.n_qubits, actual.amplitudes,
            actual.n_qubits, relabel);
        require(fidelity >= 1.0 - 1e-9,
                "fidelity " + fmt(fidelity) + " below 1-1e-9 at trial " +
                    std::to_string(trial));
    }
}

// ---- 2. Classifier probability oracle ---------------------------------

void criterion_p1_oracle() {
    Rng rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        const double t0 = (2 * rng.uniform01() - 1) * kPi;
        const double t1 = (2 * rng.uniform01() - 1) * kPi;
        const double w0 = (2 * rng.uniform01() - 1) * kPi;
        const double w1 = (2 * rng.uniform01() - 1) * kPi;
        Circuit c = assign_qubits(
            classifier_circuit(Param::constant(t0), Param::constant(t1),
                               Param::constant(w0), Param::constant(w1)),
            {{"q0", 0}, {"q1", 1}});
        auto marginal = probabilities(run_statevector(c), {0});
        const double p1 = marginal.count(1) ? marginal[1] : 0.0;
        require(std::abs(p1 - p1_analytic(t0, t1, w0)) < 1e-10,
                "statevector p1 deviates from the closed form");

        const double w1_alt = (2 * rng.uniform01() - 1) * kPi;
        Circuit c2 = assign_qubits(
            classifier_circuit(Param::constant(t0), Param::constant(t1),
                               Param::constant(w0), Param::constant(w1_alt)),
            {{"q0", 0}, {"q1", 1}});
        auto marginal2 = probabilities(run_statevector(c2), {0});
        const double p1_alt = marginal2.count(1) ? marginal2[1] : 0.0;
        require(std::abs(p1 - p1_alt) < 1e-10, "p1 not invariant in w1");
    }
}

// ---- 3. QAE landscape vs -cos^2(theta/2) ------------------------------

void criterion_qae_landscape() {
    const QaeDataset dataset = qae_dataset(40, 0.0, kPi, 8, 7);
    for (QaeMode mode : {QaeMode::Halfway, QaeMode::Full}) {
        QaeConfig sampled;
        sampled.mode = mode;
        sampled.backend = agave_backend();
        sampled.shots = 10000;
        sampled.seed = 7;
        SweepResult sweep = qae_sweep(dataset, sampled, 50);
        require(sweep.grid.front() == -kPi && sweep.grid.back() == kPi,
                "sweep endpoints missing");
        for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
            const double expectation = analytic_qae_loss(sweep.grid[i]);
            const double p = -expectation;
            const double sigma = std::sqrt(p * (1 - p) / sampled.shots);
            require(std::abs(sweep.costs[i] - expectation) <=
                        4 * sigma + 1e-9,
                    "sampled sweep point " + std::to_string(i) +
                        " off by more than 4 sigma");
        }

        QaeConfig exact = sampled;
        exact.exact = true;
        SweepResult exact_sweep = qae_sweep(dataset, exact, 50);
        for (std::size_t i = 0; i < exact_sweep.grid.size(); ++i)
            require(std::abs(exact_sweep.costs[i] -
                             analytic_qae_loss(exact_sweep.grid[i])) < 1e-10,
                    "exact sweep deviates from the analytic landscape");
    }
}

// ---- 4. QAE training convergence --------------------------------------

void criterion_qae_training() {
    for (QaeMode mode : {QaeMode::Halfway, QaeMode::Full}) {
        QaeDataset dataset = qae_dataset(40, 0.0, kPi, 8, 7);
        QaeConfig config;
        config.mode = mode;
        config.backend = agave_backend();
        config.shots = 10000;
        config.seed = 7;
        TrainReport report = qae_train(dataset, config, kPi / 1.2);
        const double wrapped =
            std::abs(std::remainder(report.optimize.best_params[0], 2 * kPi));
        require(wrapped <= 0.05,
                "theta* = " + fmt(wrapped) + " not within 0.05 of 0");
        require(report.train_loss <= -0.995,
                "train loss " + fmt(report.train_loss) + " above -0.995");
        require(std::abs(*report.test_loss - report.train_loss) <= 0.01,
                "test loss " + fmt(*report.test_loss) +
                    " not within 0.01 of train loss");
        require(report.optimize.n_evals <= 80,
                "used " + std::to_string(report.optimize.n_evals) +
                    " objective evaluations");
    }
}

// ---- 5. Depolarizing noise flattens the landscape ----------------------

void criterion_noise_flattening() {
    const QaeDataset dataset = qae_dataset(40, 0.0, kPi, 8, 7);
    QaeConfig noiseless;
    noiseless.mode = QaeMode::Halfway;
    noiseless.backend = agave_backend();
    noiseless.shots = 10000;
    noiseless.seed = 7;
    SweepResult clean = qae_sweep(dataset, noiseless, 50);

    QaeConfig noisy = noiseless;
    noisy.noise = NoiseModel{0.01, 0.01, 0.0};
    SweepResult flattened = qae_sweep(dataset, noisy, 50);

    const double clean_min =
        *std::min_element(clean.costs.begin(), clean.costs.end());
    const double noisy_min =
        *std::min_element(flattened.costs.begin(), flattened.costs.end());
    const double p = -noisy_min;
    const double sigma = std::sqrt(p * (1 - p) / noisy.shots);

    require(noisy_min > -1.0, "noisy minimum reached -1");
    require(noisy_min <= -0.8,
            "noisy minimum " + fmt(noisy_min) + " above -0.8");
    require(noisy_min > clean_min + 4 * sigma,
            "noisy minimum " + fmt(noisy_min) +
                " not separated from the noiseless one " + fmt(clean_min));
}

// ---- 6. Classifier training ---------------------------------------------

void criterion_classifier_training() {
    const XorDataset dataset = xor_dataset(10, 0.3, 9, XorVariant::Standard);
    ClassifierConfig config;
    config.backend = agave_backend();
    config.shots = 10000;
    config.seed = 9;

    ClassifierEvaluator evaluator(dataset, config);
    const double untrained_loss = evaluator.loss({0.1, 0.1}, 900001);
    const double untrained_accuracy = evaluator.accuracy({0.1, 0.1}, 900002);
    require(untrained_accuracy >= 0.35 && untrained_accuracy <= 0.65,
            "untrained accuracy " + fmt(untrained_accuracy) +
                " outside [0.35, 0.65]");

    TrainReport report = classifier_train(dataset, config, {0.1, 0.1});
    const double dist = std::abs(
        std::remainder(report.optimize.best_params[0] - kPi / 2, 2 * kPi));
    require(dist <= 0.1,
            "w0* distance from pi/2 is " + fmt(dist) + " (limit 0.1)");
    require(report.accuracy && *report.accuracy == 1.0,
            "trained accuracy " + fmt(report.accuracy.value_or(-1)) +
                " below 100%");
    require(report.train_loss < untrained_loss,
            "trained loss " + fmt(report.train_loss) +
                " not below the untrained value " + fmt(untrained_loss));
}

// ---- 7. Depth properties ------------------------------------------------

void criterion_depth_properties() {
    const DeviceSpec agave = DeviceSpec::agave8();
    Rng rng(77);
    std::set<int> depths;
    for (int trial = 0; trial < 50; ++trial) {
        const double t0 = (2 * rng.uniform01() - 1) * kPi;
        const double t1 = (2 * rng.uniform01() - 1) * kPi;
        const double w0 = (2 * rng.uniform01() - 1) * kPi;
        const double w1 = (2 * rng.uniform01() - 1) * kPi;
        CompiledCircuit compiled = compile(
            classifier_circuit(Param::constant(t0), Param::constant(t1),
                               Param::constant(w0), Param::constant(w1)),
            agave);
        depths.insert(compiled.depth);
    }
    require(depths.size() == 1,
            "classifier depth varies across bindings: " +
                std::to_string(depths.size()) + " distinct values");
    std::printf("       classifier compiled depth constant at %d\n",
                *depths.begin());

    CompiledCircuit full = compile(
        qae_build_circuit(0.7, Param::symbol("theta"), QaeMode::Full), agave);
    CompiledCircuit halfway = compile(
        qae_build_circuit(0.7, Param::symbol("theta"), QaeMode::Halfway),
        agave);
    require(full.depth > halfway.depth,
            "full depth " + std::to_string(full.depth) +
                " not above halfway depth " + std::to_string(halfway.depth));
}

// ---- 8. Local/remote backend equivalence ---------------------------------

void criterion_backend_equivalence() {
    JobService service(DeviceSpec::agave8());
    service.start("127.0.0.1", 0);
    RemoteBackend remote(service.address());
    LocalBackend local(DeviceSpec::agave8());

    JobRequest request;
    request.program = "H 0\nCNOT 0 1\nRY(0.37) 1\nMEASURE 0 -> 0\nMEASURE 1 -> 1\n";
    request.shots = 2000;
    request.seed = 424242;
    request.noise = NoiseModel{0.005, 0.01, 0.02};
    require(remote.execute(request) == local.execute(request),
            "remote and local results differ for the same request");

    constexpr int kJobs = 16;
    std::vector<std::string> ids(kJobs);
    std::vector<std::thread> threads;
    for (int i = 0; i < kJobs; ++i)
        threads.emplace_back([&, i] {
            JobRequest r = request;
            r.seed = 5000 + i;
            r.noise.reset();
            ids[i] = remote.submit(r);
        });
    for (auto& t : threads) t.join();
    require(std::set<std::string>(ids.begin(), ids.end()).size() == kJobs,
            "duplicate job ids under concurrent submission");
    for (int i = 0; i < kJobs; ++i) {
        JobRequest r = request;
        r.seed = 5000 + i;
        r.noise.reset();
        require(remote.wait(ids[i]) == local.execute(r),
                "concurrent job " + std::to_string(i) +
                    " differs from its local twin");
    }
    service.stop();
}

// ---- 9. Round trips and replay -------------------------------------------

void criterion_roundtrip_and_replay() {
    Rng rng(909);
    for (int trial = 0; trial < 100; ++trial) {
        testing::RandomCircuitOptions opts;
        opts.n_qubits = 1 + static_cast<int>(rng.below(4));
        opts.n_gates = 1 + static_cast<int>(rng.below(20));
        opts.abstract_refs = trial % 2 == 0;
        opts.with_measures = trial % 3 == 0;
        opts.symbol_probability = trial % 4 == 0 ? 0.25 : 0.0;
        Circuit c = testing::random_circuit(rng, opts);
        require(parse_program(print_program(c)) == c,
                "parse(print) changed circuit at trial " +
                    std::to_string(trial));
    }

    const nlohmann::json device =
        nlohmann::json::parse(device_spec_to_json(DeviceSpec::agave8()));
    const std::vector<nlohmann::json> configs = {
        {{"experiment", "qae_sweep"},
         {"mode", "halfway"},
         {"points", 11},
         {"lo", -kPi},
         {"hi", kPi},
         {"shots", 1000},
         {"exact", false},
         {"seed", 31},
         {"noise", {{"p1", 0.01}, {"p2", 0.01}, {"readout_flip", 0.0}}},
         {"backend", "local"},
         {"device", device},
         {"dataset", {{"n_points", 12}, {"lo", 0.0}, {"hi", kPi}, {"n_train", 4}}}},
        {{"experiment", "qae_train"},
         {"mode", "halfway"},
         {"theta0", kPi / 1.2},
         {"max_evals", 25},
         {"shots", 500},
         {"exact", false},
         {"seed", 32},
         {"noise", nullptr},
         {"backend", "local"},
         {"device", device},
         {"dataset", {{"n_points", 10}, {"lo", 0.0}, {"hi", kPi}, {"n_train", 3}}}},
        {{"experiment", "classifier_train"},
         {"variant", "standard"},
         {"per_cluster", 3},
         {"spread", 0.3},
         {"eps", 1e-6},
         {"w_init", {0.1, 0.1}},
         {"max_evals", 25},
         {"shots", 500},
         {"exact", false},
         {"seed", 33},
         {"noise", nullptr},
         {"backend", "local"},
         {"device", device}},
        {{"experiment", "decision_grid"},
         {"w0", kPi / 2},
         {"w1", 0.0},
         {"points", 5},
         {"exact", false},
         {"shots", 400},
         {"seed", 34},
         {"noise", nullptr},
         {"backend", "local"},
         {"device", device}},
        {{"experiment", "run_program"},
         {"program", "H 0\nCNOT 0 1\nMEASURE 0 -> 0\nMEASURE 1 -> 1\n"},
         {"shots", 400},
         {"seed", 35},
         {"noise", {{"p1", 0.02}, {"p2", 0.02}, {"readout_flip", 0.01}}},
         {"backend", "local"},
         {"device", device}},
    };
    for (const nlohmann::json& config : configs) {
        const std::string kind =
            result_kind_for(config.at("experiment").get<std::string>());
        ResultFile result = make_result(kind, config, run_experiment(config));
        const std::string path = "acceptance_replay_tmp.json";
        save_result(result, path);
        ResultFile loaded = load_result(path);
        require(result_to_json(loaded).dump() == result_to_json(result).dump(),
                "result file not byte-stable for " + kind);
        require(replay_payload(loaded) == loaded.payload,
                "replay differs for experiment " +
                    config.at("experiment").get<std::string>());
        std::remove(path.c_str());
    }
}

struct Criterion {
    const char* name;
    void (*run)();
    double time_limit_seconds;  // 0 = no limit
};

}  // namespace

int main() {
    const Criterion criteria[] = {
        {"1. compiler soundness on 200 random circuits", criterion_compiler_soundness, 30},
        {"2. classifier p1 closed-form oracle", criterion_p1_oracle, 5},
        {"3. QAE landscape matches -cos^2(theta/2)", criterion_qae_landscape, 120},
        {"4. QAE training converges to theta=0", criterion_qae_training, 0},
        {"5. depolarizing noise flattens the QAE landscape", criterion_noise_flattening, 0},
        {"6. XOR classifier trains to w0=pi/2 at 100% accuracy", criterion_classifier_training, 60},
        {"7. compiled depth constancy and full>halfway ordering", criterion_depth_properties, 0},
        {"8. local/remote backend equivalence, 16 concurrent jobs", criterion_backend_equivalence, 0},
        {"9. parse/print round trip and result replay", criterion_roundtrip_and_replay, 0},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            criterion.run();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        if (error.empty() && criterion.time_limit_seconds > 0 &&
            elapsed > criterion.time_limit_seconds)
            error = "exceeded time limit of " +
                    fmt(criterion.time_limit_seconds) + "s";
        if (error.empty()) {
            std::printf("[PASS] %s (%.1fs)\n", criterion.name, elapsed);
        } else {
            ++failures;
            std::printf("[FAIL] %s (%.1fs): %s\n", criterion.name, elapsed,
                        error.c_str());
        }
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n",
                    std::size(criteria));
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
