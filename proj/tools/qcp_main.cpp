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

#include <chrono>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "qcp/compiler.hpp"
#include "qcp/job_service.hpp"
#include "qcp/program_text.hpp"
#include "qcp/result_file.hpp"
#include "qcp/runs.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;

std::string default_address() {
    const char* env = std::getenv("QCP_ADDRESS");
    return env ? env : "127.0.0.1:9381";
}

// Flags shared by every command that executes circuits.
struct ExecFlags {
    std::string backend = "local";
    std::string address = default_address();
    std::string device = "agave8";
    std::vector<double> noise;  // p1,p2,readout_flip
    std::uint64_t seed = 0;
    bool seed_set = false;
    int shots = 10000;
    bool exact = false;
};

void add_exec_flags(CLI::App* cmd, ExecFlags& flags, bool with_exact = true) {
    cmd->add_option("--backend", flags.backend, "Execution target")
        ->check(CLI::IsMember({"local", "remote"}));
    cmd->add_option("--address", flags.address,
                    "Job service address for --backend remote "
                    "(default from QCP_ADDRESS)");
    cmd->add_option("--device", flags.device,
                    "Device name (agave8) or spec file path");
    cmd->add_option("--noise", flags.noise,
                    "Depolarizing noise p1,p2,readout_flip")
        ->delimiter(',')
        ->expected(3);
    cmd->add_option("--shots", flags.shots, "Shots per circuit execution");
    cmd->add_option("--seed", flags.seed, "Master RNG seed (random if omitted)")
        ->trigger_on_parse()
        ->each([&flags](const std::string&) { flags.seed_set = true; });
    if (with_exact)
        cmd->add_flag("--exact", flags.exact,
                      "Exact statevector probabilities instead of sampling");
}

nlohmann::json base_config(const ExecFlags& flags) {
    nlohmann::json config;
    if (flags.backend == "local") {
        config["backend"] = "local";
        config["device"] =
            nlohmann::json::parse(qcp::device_spec_to_json(qcp::load_device(flags.device)));
    } else {
        config["backend"] = {{"remote", flags.address}};
    }
    if (!flags.noise.empty())
        config["noise"] = {{"p1", flags.noise[0]},
                           {"p2", flags.noise[1]},
                           {"readout_flip", flags.noise[2]}};
    else
        config["noise"] = nullptr;
    config["seed"] =
        flags.seed_set ? flags.seed : std::uint64_t{std::random_device{}()};
    config["shots"] = flags.shots;
    config["exact"] = flags.exact;
    return config;
}

// Runs the experiment described by `config` and persists <out>.json
// plus <out>.csv.
void run_and_save(const nlohmann::json& config, const std::string& out_base) {
    const std::string kind =
        qcp::result_kind_for(config.at("experiment").get<std::string>());
    nlohmann::json payload = qcp::run_experiment(config);
    qcp::ResultFile result = qcp::make_result(kind, config, payload);
    qcp::save_result(result, out_base + ".json");
    qcp::write_text_file(out_base + ".csv",
                         qcp::payload_to_csv(kind, payload));
    std::cout << "wrote " << out_base << ".json and " << out_base << ".csv\n";
}

int cmd_compile(const std::string& input, const std::string& device_name,
                const std::string& out_path) {
    qcp::Circuit circuit;
    try {
        circuit = qcp::parse_program(qcp::read_text_file(input));
    } catch (const qcp::ParseError& e) {
        std::cerr << input << ": " << e.what() << "\n";
        return kExitUsage;
    }
    const qcp::DeviceSpec device = qcp::load_device(device_name);
    qcp::CompiledCircuit compiled = qcp::compile(circuit, device);

    std::ostringstream out;
    out << "# device: " << device.name << "\n";
    out << "# depth: " << compiled.depth << "\n";
    out << "# gates:";
    for (const auto& [kind, count] : compiled.gate_counts)
        out << ' ' << qcp::gate_name(kind) << '=' << count;
    out << "\n";
    if (!compiled.initial_map.empty()) {
        out << "# initial_map:";
        for (const auto& [name, index] : compiled.initial_map)
            out << " %" << name << "->" << index;
        out << "\n";
    }
    out << "# final_permutation:";
    for (const auto& [logical, physical] : compiled.final_permutation)
        out << ' ' << logical << "->" << physical;
    out << "\n";
    out << qcp::print_program(compiled.circuit);

    if (out_path.empty())
        std::cout << out.str();
    else
        qcp::write_text_file(out_path, out.str());
    std::cerr << "compiled: depth " << compiled.depth << ", "
              << compiled.circuit.size() << " native instructions\n";
    return 0;
}

int cmd_run(const ExecFlags& flags, const std::string& input,
            const std::string& out_base) {
    nlohmann::json config = base_config(flags);
    config["experiment"] = "run_program";
    try {
        config["program"] = qcp::read_text_file(input);
        qcp::parse_program(config["program"].get<std::string>());
    } catch (const qcp::ParseError& e) {
        std::cerr << input << ": " << e.what() << "\n";
        return kExitUsage;
    }
    nlohmann::json payload = qcp::run_experiment(config);
    qcp::ResultFile result = qcp::make_result("run", config, payload);
    qcp::save_result(result, out_base + ".json");
    qcp::write_text_file(out_base + ".csv", qcp::payload_to_csv("run", payload));
    for (const auto& [bits, count] : payload.at("counts").items())
        std::cout << bits << ": " << count << "\n";
    std::cout << "wrote " << out_base << ".json and " << out_base << ".csv\n";
    return 0;
}

int cmd_serve(const std::string& host, int port, const std::string& device_name,
              const std::vector<double>& noise) {
    std::optional<qcp::NoiseModel> default_noise;
    if (!noise.empty())
        default_noise = qcp::NoiseModel{noise[0], noise[1], noise[2]};
    qcp::JobService service(qcp::load_device(device_name), default_noise);
    service.start(host, port);
    std::cout << "job service listening on " << service.address() << "\n";
    // Block until interrupted.
    static volatile std::sig_atomic_t interrupted = 0;
    std::signal(SIGINT, [](int) { interrupted = 1; });
    std::signal(SIGTERM, [](int) { interrupted = 1; });
    while (!interrupted) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    service.stop();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcp: compile, execute and train small variational "
                 "quantum-circuit experiments"};
    app.require_subcommand(1);

    // compile
    auto* compile_cmd =
        app.add_subcommand("compile", "Compile a .qp program for a device");
    std::string compile_input, compile_device = "agave8", compile_out;
    compile_cmd->add_option("input", compile_input, "Program file (.qp)")
        ->required();
    compile_cmd->add_option("--device", compile_device,
                            "Device name or spec file path");
    compile_cmd->add_option("-o,--output", compile_out,
                            "Output path (stdout if omitted)");

    // run
    auto* run_cmd = app.add_subcommand("run", "Execute a .qp program");
    ExecFlags run_flags;
    std::string run_input, run_out = "run_result";
    run_cmd->add_option("input", run_input, "Program file (.qp)")->required();
    run_cmd->add_option("--out", run_out, "Output base name");
    add_exec_flags(run_cmd, run_flags, /*with_exact=*/false);

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Start the job service");
    std::string serve_host = "127.0.0.1", serve_device = "agave8";
    int serve_port = 9381;
    std::vector<double> serve_noise;
    serve_cmd->add_option("--host", serve_host, "Bind host");
    serve_cmd->add_option("--port", serve_port, "Bind port");
    serve_cmd->add_option("--device", serve_device, "Device name or spec path");
    serve_cmd->add_option("--noise", serve_noise, "Default noise p1,p2,readout")
        ->delimiter(',')
        ->expected(3);

    // qae sweep | qae train
    auto* qae_cmd = app.add_subcommand("qae", "Quantum autoencoder experiments");
    qae_cmd->require_subcommand(1);
    auto* sweep_cmd = qae_cmd->add_subcommand("sweep", "Loss landscape sweep");
    ExecFlags sweep_flags;
    std::string sweep_mode = "halfway", sweep_out = "qae_sweep";
    int sweep_points = 50;
    double sweep_lo = -3.141592653589793, sweep_hi = 3.141592653589793;
    sweep_cmd->add_option("--mode", sweep_mode, "Training scheme")
        ->check(CLI::IsMember({"halfway", "full"}));
    sweep_cmd->add_option("--points", sweep_points, "Grid points");
    sweep_cmd->add_option("--lo", sweep_lo, "Grid start");
    sweep_cmd->add_option("--hi", sweep_hi, "Grid end");
    sweep_cmd->add_option("--out", sweep_out, "Output base name");
    add_exec_flags(sweep_cmd, sweep_flags);

    auto* train_cmd = qae_cmd->add_subcommand("train", "Optimize the encoder");
    ExecFlags train_flags;
    std::string train_mode = "halfway", train_out = "qae_train";
    double train_theta0 = 3.141592653589793 / 1.2;
    int train_max_evals = 80;
    train_cmd->add_option("--mode", train_mode, "Training scheme")
        ->check(CLI::IsMember({"halfway", "full"}));
    train_cmd->add_option("--theta0", train_theta0, "Initial parameter");
    train_cmd->add_option("--max-evals", train_max_evals,
                          "Objective evaluation budget");
    train_cmd->add_option("--out", train_out, "Output base name");
    add_exec_flags(train_cmd, train_flags);

    // classify train | classify grid
    auto* classify_cmd =
        app.add_subcommand("classify", "XOR variational classifier");
    classify_cmd->require_subcommand(1);
    auto* ctrain_cmd =
        classify_cmd->add_subcommand("train", "Train the classifier weights");
    ExecFlags ctrain_flags;
    std::string ctrain_variant = "standard", ctrain_out = "classify_train";
    int ctrain_per_cluster = 10, ctrain_max_evals = 120;
    double ctrain_spread = 0.3, ctrain_eps = 1e-6;
    std::vector<double> ctrain_w_init = {0.1, 0.1};
    ctrain_cmd->add_option("--variant", ctrain_variant, "Dataset variant")
        ->check(CLI::IsMember({"standard", "shifted"}));
    ctrain_cmd->add_option("--per-cluster", ctrain_per_cluster,
                           "Points per cluster");
    ctrain_cmd->add_option("--spread", ctrain_spread, "Cluster half-width");
    ctrain_cmd->add_option("--eps", ctrain_eps, "Cross-entropy clamp");
    ctrain_cmd->add_option("--w-init", ctrain_w_init, "Initial weights w0,w1")
        ->delimiter(',')
        ->expected(2);
    ctrain_cmd->add_option("--max-evals", ctrain_max_evals,
                           "Objective evaluation budget");
    ctrain_cmd->add_option("--out", ctrain_out, "Output base name");
    add_exec_flags(ctrain_cmd, ctrain_flags);

    auto* grid_cmd =
        classify_cmd->add_subcommand("grid", "Decision-boundary p1 grid");
    ExecFlags grid_flags;
    grid_flags.exact = true;
    std::string grid_out = "classify_grid";
    int grid_points = 41;
    double grid_w0 = 0.0, grid_w1 = 0.0;
    bool grid_sampled = false;
    grid_cmd->add_option("--w0", grid_w0, "Weight w0")->required();
    grid_cmd->add_option("--w1", grid_w1, "Weight w1");
    grid_cmd->add_option("--points", grid_points, "Grid points per axis");
    grid_cmd->add_flag("--sampled", grid_sampled,
                       "Backend shot estimates instead of the closed form");
    grid_cmd->add_option("--out", grid_out, "Output base name");
    add_exec_flags(grid_cmd, grid_flags, /*with_exact=*/false);

    // replay
    auto* replay_cmd = app.add_subcommand(
        "replay", "Regenerate a stored result from its recorded config");
    std::string replay_input, replay_out;
    replay_cmd->add_option("result", replay_input, "Result .json path")
        ->required();
    replay_cmd->add_option("--out", replay_out,
                           "Write the regenerated result here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    try {
        if (*compile_cmd)
            return cmd_compile(compile_input, compile_device, compile_out);
        if (*run_cmd) return cmd_run(run_flags, run_input, run_out);
        if (*serve_cmd)
            return cmd_serve(serve_host, serve_port, serve_device, serve_noise);
        if (*sweep_cmd) {
            nlohmann::json config = base_config(sweep_flags);
            config["experiment"] = "qae_sweep";
            config["mode"] = sweep_mode;
            config["points"] = sweep_points;
            config["lo"] = sweep_lo;
            config["hi"] = sweep_hi;
            config["dataset"] = {{"n_points", 40}, {"lo", 0.0},
                                 {"hi", 3.141592653589793}, {"n_train", 8}};
            run_and_save(config, sweep_out);
            return 0;
        }
        if (*train_cmd) {
            nlohmann::json config = base_config(train_flags);
            config["experiment"] = "qae_train";
            config["mode"] = train_mode;
            config["theta0"] = train_theta0;
            config["max_evals"] = train_max_evals;
            config["dataset"] = {{"n_points", 40}, {"lo", 0.0},
                                 {"hi", 3.141592653589793}, {"n_train", 8}};
            run_and_save(config, train_out);
            return 0;
        }
        if (*ctrain_cmd) {
            nlohmann::json config = base_config(ctrain_flags);
            config["experiment"] = "classifier_train";
            config["variant"] = ctrain_variant;
            config["per_cluster"] = ctrain_per_cluster;
            config["spread"] = ctrain_spread;
            config["eps"] = ctrain_eps;
            config["w_init"] = ctrain_w_init;
            config["max_evals"] = ctrain_max_evals;
            run_and_save(config, ctrain_out);
            return 0;
        }
        if (*grid_cmd) {
            nlohmann::json config = base_config(grid_flags);
            config["experiment"] = "decision_grid";
            config["w0"] = grid_w0;
            config["w1"] = grid_w1;
            config["points"] = grid_points;
            config["exact"] = !grid_sampled;
            run_and_save(config, grid_out);
            return 0;
        }
        if (*replay_cmd) {
            qcp::ResultFile stored = qcp::load_result(replay_input);
            nlohmann::json payload = qcp::replay_payload(stored);
            const bool identical = payload == stored.payload;
            std::cout << "replayed payload is "
                      << (identical ? "identical" : "DIFFERENT") << "\n";
            if (!replay_out.empty()) {
                qcp::ResultFile regenerated =
                    qcp::make_result(stored.kind, stored.config, payload);
                qcp::save_result(regenerated, replay_out + ".json");
                qcp::write_text_file(
                    replay_out + ".csv",
                    qcp::payload_to_csv(stored.kind, payload));
            }
            return identical ? 0 : kExitError;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}
