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

#include "qcp/backend.hpp"

#include <chrono>
#include <mutex>
#include <random>
#include <thread>

#include <httplib.h>

#include "qcp/program_text.hpp"

namespace qcp {

const char* job_status_name(JobStatus status) {
    switch (status) {
        case JobStatus::Queued: return "queued";
        case JobStatus::Running: return "running";
        case JobStatus::Done: return "done";
        case JobStatus::Failed: return "failed";
    }
    throw Error("unknown job status");
}

JobStatus job_status_from_name(const std::string& name) {
    if (name == "queued") return JobStatus::Queued;
    if (name == "running") return JobStatus::Running;
    if (name == "done") return JobStatus::Done;
    if (name == "failed") return JobStatus::Failed;
    throw Error("unknown job status '" + name + "'");
}

nlohmann::json noise_to_json(const NoiseModel& noise) {
    return {{"p1", noise.p1},
            {"p2", noise.p2},
            {"readout_flip", noise.readout_flip}};
}

NoiseModel noise_from_json(const nlohmann::json& j) {
    NoiseModel noise;
    noise.p1 = j.at("p1").get<double>();
    noise.p2 = j.at("p2").get<double>();
    noise.readout_flip = j.at("readout_flip").get<double>();
    noise.validate();
    return noise;
}

nlohmann::json job_request_to_json(const JobRequest& request) {
    nlohmann::json j;
    j["program"] = request.program;
    j["shots"] = request.shots;
    if (request.seed) j["seed"] = *request.seed;
    if (request.noise) j["noise"] = noise_to_json(*request.noise);
    return j;
}

JobRequest job_request_from_json(const nlohmann::json& j) {
    JobRequest request;
    request.program = j.at("program").get<std::string>();
    request.shots = j.at("shots").get<int>();
    if (j.contains("seed") && !j["seed"].is_null())
        request.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("noise") && !j["noise"].is_null())
        request.noise = noise_from_json(j["noise"]);
    return request;
}

nlohmann::json shot_result_to_json(const ShotResult& result) {
    auto bitstrings = nlohmann::json::array();
    for (int k = 0; k < result.shots(); ++k) {
        std::string s(result.n_bits, '0');
        for (int i = 0; i < result.n_bits; ++i)
            if (result.bit(k, i)) s[i] = '1';
        bitstrings.push_back(std::move(s));
    }
    return {{"bitstrings", std::move(bitstrings)},
            {"shots", result.shots()},
            {"seed", result.seed}};
}

ShotResult shot_result_from_json(const nlohmann::json& j) {
    ShotResult result;
    result.seed = j.at("seed").get<std::uint64_t>();
    const auto& bitstrings = j.at("bitstrings");
    for (const auto& entry : bitstrings) {
        const std::string s = entry.get<std::string>();
        result.n_bits = static_cast<int>(s.size());
        std::uint64_t word = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == '1') word |= std::uint64_t{1} << i;
        result.words.push_back(word);
    }
    return result;
}

Circuit validate_request(const JobRequest& request, const DeviceSpec& device) {
    if (request.shots < 1) throw Error("shots must be >= 1");
    Circuit circuit = parse_program(request.program);
    if (!circuit.fully_bound())
        throw Error("program has unbound symbols");
    if (!circuit.empty() && !circuit.is_physical())
        throw Error("program must use physical qubit indices");
    if (circuit.max_physical_index() >= device.n_qubits)
        throw Error("program uses qubit " +
                    std::to_string(circuit.max_physical_index()) +
                    " beyond device size");
    for (const Instruction& instr : circuit.instructions())
        if (instr.qubits.size() == 2 &&
            !device.has_edge(instr.qubits[0].index(), instr.qubits[1].index()))
            throw Error("two-qubit gate " + std::string(gate_name(instr.kind)) +
                        " " + instr.qubits[0].to_string() + " " +
                        instr.qubits[1].to_string() +
                        " is not on a device edge");
    if (!circuit.has_measurements())
        throw Error("program has no measurements");
    return circuit;
}

LocalBackend::LocalBackend(DeviceSpec device,
                           std::optional<NoiseModel> default_noise)
    : device_(std::move(device)), default_noise_(default_noise) {
    device_.validate();
    if (default_noise_) default_noise_->validate();
}

ShotResult LocalBackend::execute(const JobRequest& request) {
    Circuit circuit = validate_request(request, device_);
    const std::optional<NoiseModel> noise =
        request.noise ? request.noise : default_noise_;
    const std::uint64_t seed =
        request.seed ? *request.seed : std::random_device{}();
    return sample_shots(circuit, request.shots, noise, seed);
}

struct RemoteBackend::Impl {
    std::string host;
    int port = 0;
    httplib::Client client;
    // httplib clients are not safe for concurrent requests; callers may
    // execute from several threads (parallel sweeps), so serialize.
    mutable std::mutex http_mutex;
    mutable std::optional<DeviceSpec> cached_device;

    Impl(std::string host_, int port_)
        : host(std::move(host_)), port(port_), client(host, port) {
        client.set_connection_timeout(5, 0);
        client.set_read_timeout(30, 0);
    }

    httplib::Result post(const std::string& path, const std::string& body) {
        std::lock_guard<std::mutex> lock(http_mutex);
        return client.Post(path, body, "application/json");
    }
    httplib::Result get(const std::string& path) {
        std::lock_guard<std::mutex> lock(http_mutex);
        return client.Get(path);
    }
};

RemoteBackend::RemoteBackend(const std::string& address) {
    const std::size_t colon = address.rfind(':');
    if (colon == std::string::npos)
        throw Error("remote address must be host:port, got '" + address + "'");
    const std::string host = address.substr(0, colon);
    const int port = std::stoi(address.substr(colon + 1));
    impl_ = std::make_unique<Impl>(host, port);
}

RemoteBackend::~RemoteBackend() = default;

std::string RemoteBackend::submit(const JobRequest& request) {
    // Surface malformed programs before any network round trip.
    parse_program(request.program);
    auto response = impl_->post("/jobs", job_request_to_json(request).dump());
    if (!response)
        throw Error("job service unreachable at " + impl_->host + ":" +
                    std::to_string(impl_->port));
    nlohmann::json body = nlohmann::json::parse(response->body);
    if (response->status != 200)
        throw Error("job submission rejected: " +
                    body.value("error", "unknown error"));
    return body.at("id").get<std::string>();
}

JobRecord RemoteBackend::lookup(const std::string& id) {
    auto response = impl_->get("/jobs/" + id);
    if (!response) throw Error("job service unreachable");
    nlohmann::json body = nlohmann::json::parse(response->body);
    if (response->status == 404)
        throw Error("unknown job id '" + id + "'");
    if (response->status != 200)
        throw Error("job lookup failed: " + body.value("error", "unknown"));
    JobRecord record;
    record.id = body.at("id").get<std::string>();
    record.status = job_status_from_name(body.at("status").get<std::string>());
    if (body.contains("result") && !body["result"].is_null())
        record.result = shot_result_from_json(body["result"]);
    if (body.contains("error") && !body["error"].is_null())
        record.error = body["error"].get<std::string>();
    return record;
}

ShotResult RemoteBackend::wait(const std::string& id, double timeout_seconds) {
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration<double>(timeout_seconds);
    while (true) {
        JobRecord record = lookup(id);
        if (record.status == JobStatus::Done) return *record.result;
        if (record.status == JobStatus::Failed)
            throw Error("job " + id + " failed: " +
                        record.error.value_or("unknown error"));
        if (std::chrono::steady_clock::now() > deadline)
            throw Error("timed out waiting for job " + id);
        std::this_thread::sleep_for(std::chrono::milliseconds(2));
    }
}

ShotResult RemoteBackend::execute(const JobRequest& request) {
    return wait(submit(request));
}

const DeviceSpec& RemoteBackend::device() const {
    if (!impl_->cached_device) {
        auto response = impl_->get("/device");
        if (!response || response->status != 200)
            throw Error("cannot fetch device spec from job service");
        impl_->cached_device = parse_device_spec(response->body);
    }
    return *impl_->cached_device;
}

}  // namespace qcp
