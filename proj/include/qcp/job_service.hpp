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

#include "qcp/backend.hpp"

namespace qcp {

/// Networked job service emulating a cloud execution target.
///
/// Endpoints:
///   POST /jobs        body: JobRequest JSON; 200 {"id": ...} or 400
///   GET  /jobs/{id}   JobRecord JSON, 404 for unknown ids
///   GET  /device      DeviceSpec JSON
///
/// Submissions are validated synchronously (malformed programs and
/// off-edge two-qubit gates are refused), then executed asynchronously
/// on a small worker pool. Jobs are isolated: each result depends only
/// on its own request.
class JobService {
  public:
    JobService(DeviceSpec device, std::optional<NoiseModel> default_noise = {},
               int workers = 4);
    ~JobService();

    /// Binds and serves on a background thread. port 0 picks a free
    /// port; the chosen one is available from port() afterwards.
    void start(const std::string& host, int port);
    void stop();

    int port() const;
    std::string address() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace qcp
