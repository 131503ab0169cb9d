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

#include <cstdint>
#include <optional>

#include <json.hpp>

#include "qcp/optimize.hpp"

namespace qcp {

/// Outcome of one training run: the optimizer trace plus losses
/// re-evaluated at the best parameters.
struct TrainReport {
    OptimizeResult optimize;
    double train_loss = 0.0;
    double train_stderr = 0.0;
    std::optional<double> test_loss;
    std::optional<double> test_stderr;
    std::optional<double> accuracy;  // classifier only, thresholded at 0.5
    int shots = 0;
    std::uint64_t seed = 0;
    nlohmann::json config_echo;
};

}  // namespace qcp
