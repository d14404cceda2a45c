// Copyright 2026 The nbmf-anneal Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "nbmf/driver.hpp"

namespace nbmf {

nlohmann::json to_json(const DriverConfig& cfg);
nlohmann::json to_json(const IterationRecord& rec);
nlohmann::json to_json(const Qubo& qubo);

/// {iteration, k, B, C, history, config, master_seed}; B and C carry
/// {rows, cols, data} with data in row-major order.
nlohmann::json checkpoint_json(const FactorizationState& state, const DriverConfig& cfg);

/// Write-then-rename, so an interrupted run leaves the previous file intact.
void save_checkpoint(const std::filesystem::path& path, const FactorizationState& state,
                     const DriverConfig& cfg);
FactorizationState load_checkpoint(const std::filesystem::path& path);

/// iteration,relative_residual,pct_change_b,pct_change_c,cumulative_qpu_time_us
std::string history_csv(const FactorizationState& state);

/// Writes `contents` to `path` through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace nbmf
