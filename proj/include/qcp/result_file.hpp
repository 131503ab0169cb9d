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

#include <string>

#include <json.hpp>

namespace qcp {

/// Persisted experiment output: a versioned JSON record whose config
/// block contains everything (seeds included) needed to regenerate the
/// payload, plus a flat CSV twin for plotting.
struct ResultFile {
    int format_version = 1;
    std::string kind;  // "sweep" | "train" | "grid" | "run"
    std::string created_at;
    nlohmann::json config;
    nlohmann::json payload;
};

ResultFile make_result(const std::string& kind, nlohmann::json config,
                       nlohmann::json payload);

nlohmann::json result_to_json(const ResultFile& result);
ResultFile result_from_json(const nlohmann::json& j);

void save_result(const ResultFile& result, const std::string& json_path);
ResultFile load_result(const std::string& json_path);

/// 17-significant-digit decimal, enough to round-trip any double.
std::string format_double(double value);

/// CSV twin of a payload; header depends on the kind.
std::string payload_to_csv(const std::string& kind,
                           const nlohmann::json& payload);

std::string iso8601_utc_now();

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace qcp
