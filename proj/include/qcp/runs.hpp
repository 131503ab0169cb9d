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

#include <json.hpp>

#include "qcp/backend.hpp"
#include "qcp/result_file.hpp"

namespace qcp {

/// Experiment entry points driven entirely by a config JSON. The CLI
/// builds configs from flags; replaying a stored ResultFile feeds its
/// config straight back through the same functions, which is what makes
/// results regenerable.
///
/// Common config keys:
///   "backend": "local" | {"remote": "host:port"}
///   "device":  embedded device spec JSON (see device.hpp schema)
///   "noise":   null | {"p1", "p2", "readout_flip"}
///   "seed":    master seed (always present; the CLI fills one in)
///
/// config["experiment"] selects the run:
///   "qae_sweep":        mode, shots, exact, points, lo, hi, dataset{...}
///   "qae_train":        mode, shots, exact, theta0, max_evals, dataset{...}
///   "classifier_train": variant, per_cluster, spread, shots, exact,
///                       eps, w_init, max_evals
///   "decision_grid":    w0, w1, points, exact, shots
///   "run_program":      program, shots
nlohmann::json run_experiment(const nlohmann::json& config);

/// Regenerates the payload from a result's recorded config.
nlohmann::json replay_payload(const ResultFile& result);

std::shared_ptr<Backend> make_backend(const nlohmann::json& config);

/// Maps experiment names to the ResultFile kind ("sweep", "train",
/// "grid" or "run").
std::string result_kind_for(const std::string& experiment);

}  // namespace qcp
