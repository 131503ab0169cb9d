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

#include "qcp/runs.hpp"

#include <numbers>

#include "qcp/classifier.hpp"
#include "qcp/qae.hpp"
#include "qcp/rng.hpp"

namespace qcp {

namespace {

constexpr double kPi = std::numbers::pi;

std::optional<NoiseModel> noise_from_config(const nlohmann::json& config) {
    if (!config.contains("noise") || config["noise"].is_null()) return {};
    return noise_from_json(config["noise"]);
}

QaeDataset dataset_from_config(const nlohmann::json& config) {
    const auto& d = config.at("dataset");
    return qae_dataset(d.value("n_points", 40), d.value("lo", 0.0),
                       d.value("hi", kPi), d.value("n_train", 8),
                       config.at("seed").get<std::uint64_t>());
}

QaeConfig qae_config_from(const nlohmann::json& config,
                          std::shared_ptr<Backend> backend) {
    QaeConfig qc;
    qc.mode = config.at("mode").get<std::string>() == "full" ? QaeMode::Full
                                                             : QaeMode::Halfway;
    qc.shots = config.value("shots", 10000);
    qc.backend = std::move(backend);
    qc.exact = config.value("exact", false);
    qc.noise = noise_from_config(config);
    qc.seed = config.at("seed").get<std::uint64_t>();
    return qc;
}

nlohmann::json optimize_to_json(const OptimizeResult& opt) {
    auto trace = nlohmann::json::array();
    for (const auto& [params, cost] : opt.trace)
        trace.push_back({{"params", params}, {"cost", cost}});
    return {{"best_params", opt.best_params},
            {"best_cost", opt.best_cost},
            {"n_evals", opt.n_evals},
            {"converged", opt.converged},
            {"trace", std::move(trace)}};
}

nlohmann::json train_report_to_json(const TrainReport& report) {
    nlohmann::json j = optimize_to_json(report.optimize);
    j["train_loss"] = report.train_loss;
    j["train_stderr"] = report.train_stderr;
    if (report.test_loss) j["test_loss"] = *report.test_loss;
    if (report.test_stderr) j["test_stderr"] = *report.test_stderr;
    if (report.accuracy) j["accuracy"] = *report.accuracy;
    return j;
}

nlohmann::json run_qae_sweep(const nlohmann::json& config,
                             std::shared_ptr<Backend> backend) {
    SweepResult sweep = qae_sweep(
        dataset_from_config(config), qae_config_from(config, std::move(backend)),
        config.value("points", 50), config.value("lo", -kPi),
        config.value("hi", kPi));
    return {{"grid", sweep.grid},
            {"costs", sweep.costs},
            {"stderrs", sweep.stderrs}};
}

nlohmann::json run_qae_train(const nlohmann::json& config,
                             std::shared_ptr<Backend> backend) {
    NelderMeadOptions options = default_qae_train_options();
    options.max_evals = config.value("max_evals", options.max_evals);
    options.initial_step = config.value("initial_step", options.initial_step);
    TrainReport report =
        qae_train(dataset_from_config(config),
                  qae_config_from(config, std::move(backend)),
                  config.value("theta0", kPi / 1.2), options);
    return train_report_to_json(report);
}

nlohmann::json run_classifier_train(const nlohmann::json& config,
                                    std::shared_ptr<Backend> backend) {
    const XorVariant variant =
        config.value("variant", std::string("standard")) == "shifted"
            ? XorVariant::Shifted
            : XorVariant::Standard;
    XorDataset dataset =
        xor_dataset(config.value("per_cluster", 10), config.value("spread", 0.3),
                    config.at("seed").get<std::uint64_t>(), variant);
    ClassifierConfig cc;
    cc.shots = config.value("shots", 10000);
    cc.backend = std::move(backend);
    cc.exact = config.value("exact", false);
    cc.noise = noise_from_config(config);
    cc.seed = config.at("seed").get<std::uint64_t>();
    cc.eps = config.value("eps", 1e-6);
    NelderMeadOptions options = default_classifier_train_options();
    options.max_evals = config.value("max_evals", options.max_evals);
    std::array<double, 2> w_init = {0.1, 0.1};
    if (config.contains("w_init")) {
        w_init[0] = config["w_init"].at(0).get<double>();
        w_init[1] = config["w_init"].at(1).get<double>();
    }
    return train_report_to_json(
        classifier_train(dataset, cc, w_init, options));
}

nlohmann::json run_decision_grid(const nlohmann::json& config,
                                 std::shared_ptr<Backend> backend) {
    const int points = config.value("points", 41);
    const double w0 = config.at("w0").get<double>();
    const double w1 = config.at("w1").get<double>();
    DecisionGrid grid;
    if (config.value("exact", true)) {
        grid = decision_grid(analytic_p1_fn(w0), points);
    } else {
        // Backend-estimated p1 on the grid; reuses the classifier's
        // compiled circuit through an evaluator over an empty dataset.
        ClassifierConfig cc;
        cc.shots = config.value("shots", 10000);
        cc.backend = std::move(backend);
        cc.noise = noise_from_config(config);
        cc.seed = config.at("seed").get<std::uint64_t>();
        XorDataset empty;
        ClassifierEvaluator evaluator(std::move(empty), cc);
        std::uint64_t counter = 0;
        grid = decision_grid(
            [&](double theta0, double theta1) {
                return evaluator.p1({theta0, theta1}, {w0, w1},
                                    derive_seed(cc.seed, counter++));
            },
            points);
    }
    return {{"points", grid.points}, {"axis", grid.axis}, {"p1", grid.p1}};
}

nlohmann::json run_program(const nlohmann::json& config,
                           std::shared_ptr<Backend> backend) {
    JobRequest request;
    request.program = config.at("program").get<std::string>();
    request.shots = config.value("shots", 1000);
    request.noise = noise_from_config(config);
    request.seed = config.at("seed").get<std::uint64_t>();
    ShotResult result = backend->execute(request);
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [pattern, count] : result.counts()) {
        std::string key(result.n_bits, '0');
        for (int i = 0; i < result.n_bits; ++i)
            if ((pattern >> i) & 1) key[i] = '1';
        counts[key] = count;
    }
    return {{"n_bits", result.n_bits},
            {"shots", result.shots()},
            {"seed", result.seed},
            {"counts", std::move(counts)}};
}

}  // namespace

std::shared_ptr<Backend> make_backend(const nlohmann::json& config) {
    const auto& spec = config.at("backend");
    if (spec.is_string() && spec.get<std::string>() == "local")
        return std::make_shared<LocalBackend>(
            parse_device_spec(config.at("device").dump()));
    if (spec.is_object() && spec.contains("remote"))
        return std::make_shared<RemoteBackend>(
            spec["remote"].get<std::string>());
    throw Error("config backend must be \"local\" or {\"remote\": address}");
}

std::string result_kind_for(const std::string& experiment) {
    if (experiment == "qae_sweep") return "sweep";
    if (experiment == "qae_train" || experiment == "classifier_train")
        return "train";
    if (experiment == "decision_grid") return "grid";
    if (experiment == "run_program") return "run";
    throw Error("unknown experiment '" + experiment + "'");
}

nlohmann::json run_experiment(const nlohmann::json& config) {
    if (!config.contains("seed") || config["seed"].is_null())
        throw Error("config must record a seed");
    const std::string experiment = config.at("experiment").get<std::string>();
    std::shared_ptr<Backend> backend = make_backend(config);
    if (experiment == "qae_sweep") return run_qae_sweep(config, backend);
    if (experiment == "qae_train") return run_qae_train(config, backend);
    if (experiment == "classifier_train")
        return run_classifier_train(config, backend);
    if (experiment == "decision_grid") return run_decision_grid(config, backend);
    if (experiment == "run_program") return run_program(config, backend);
    throw Error("unknown experiment '" + experiment + "'");
}

nlohmann::json replay_payload(const ResultFile& result) {
    return run_experiment(result.config);
}

}  // namespace qcp
