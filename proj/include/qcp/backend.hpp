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
#include <optional>
#include <string>

#include <json.hpp>

#include "qcp/device.hpp"
#include "qcp/simulator.hpp"

namespace qcp {

/// One unit of work for an execution target: a fully bound physical
/// program in `.qp` text plus sampling parameters.
struct JobRequest {
    std::string program;
    int shots = 1;
    std::optional<NoiseModel> noise;
    std::optional<std::uint64_t> seed;
};

enum class JobStatus { Queued, Running, Done, Failed };

const char* job_status_name(JobStatus status);
JobStatus job_status_from_name(const std::string& name);

struct JobRecord {
    std::string id;
    JobStatus status = JobStatus::Queued;
    std::optional<ShotResult> result;  // present iff Done
    std::optional<std::string> error;  // present iff Failed
};

/// Uniform execution interface. Both implementations resolve a request
/// to the same sampling routine, so identical (program, shots, noise,
/// seed) yield bit-identical results through either path.
class Backend {
  public:
    virtual ~Backend() = default;
    virtual ShotResult execute(const JobRequest& request) = 0;
    virtual const DeviceSpec& device() const = 0;
};

/// In-process execution against the statevector sampler. Refuses
/// programs whose two-qubit gates do not sit on device edges, matching
/// the job service's behavior.
class LocalBackend : public Backend {
  public:
    explicit LocalBackend(DeviceSpec device,
                          std::optional<NoiseModel> default_noise = {});

    ShotResult execute(const JobRequest& request) override;
    const DeviceSpec& device() const override { return device_; }

  private:
    DeviceSpec device_;
    std::optional<NoiseModel> default_noise_;
};

/// HTTP client for the job service: submit, then poll until the job
/// finishes. Parse errors in the program surface before submission.
class RemoteBackend : public Backend {
  public:
    /// Address is "host:port".
    explicit RemoteBackend(const std::string& address);
    ~RemoteBackend() override;

    ShotResult execute(const JobRequest& request) override;
    const DeviceSpec& device() const override;

    /// Submit without waiting; returns the job id.
    std::string submit(const JobRequest& request);
    JobRecord lookup(const std::string& id);
    ShotResult wait(const std::string& id, double timeout_seconds = 60.0);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Wire schema (JSON bodies, field names fixed):
//   request: {"program": str, "shots": int, "seed": int?,
//             "noise": {"p1": num, "p2": num, "readout_flip": num}?}
//   record:  {"id": str, "status": str,
//             "result": {"bitstrings": [str], "shots": int, "seed": int}?,
//             "error": str?}
nlohmann::json job_request_to_json(const JobRequest& request);
JobRequest job_request_from_json(const nlohmann::json& j);
nlohmann::json shot_result_to_json(const ShotResult& result);
ShotResult shot_result_from_json(const nlohmann::json& j);
nlohmann::json noise_to_json(const NoiseModel& noise);
NoiseModel noise_from_json(const nlohmann::json& j);

/// Parses a request's program and checks it is executable on the
/// device: fully bound, physical, in range, two-qubit gates on edges.
/// Shared by the local backend and the service.
Circuit validate_request(const JobRequest& request, const DeviceSpec& device);

}  // namespace qcp
