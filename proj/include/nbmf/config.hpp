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

// Run options shared by every subcommand. A JSON config file supplies the
// base values; command-line flags override them key by key. Keys match the
// long flag names with dashes replaced by underscores.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nbmf/driver.hpp"
#include "nbmf/io.hpp"

namespace nbmf {

enum class Command { factorize, calibrate, benchmark, generate };

Command parse_command(const std::string& name);
const char* to_string(Command command);

struct RunOptions {
  // input / output
  std::string input;
  MatrixFormat format = MatrixFormat::csv;
  bool transpose = false;
  std::string out = "out";
  std::uint64_t seed = 0;
  unsigned threads = 1;

  // factorization
  int rank = 8;
  int iterations = 10;
  int warmup = 1;
  bool forward_only = false;  // --mode forward-only
  double r = 0.45;
  double tr = 10.0;
  int forward_samples = 1000;
  std::optional<int> reverse_samples;  // empty = auto-equal-time
  bool rounded_ratio = false;
  int sweeps_per_us = 10;
  double hot_temperature_scale = 1.0;
  double init_density = 0.5;
  int nnls_max_iterations = 5000;
  double nnls_tolerance = 1e-8;
  double ridge = 0.0;
  std::string resume;

  // calibrate / benchmark
  int corpus_size = 100;
  std::vector<double> r_grid;
  std::vector<double> tr_grid{10.0, 100.0};
  int calibration_samples = 100;
  double tabu_max_time_us = 1e6;
  std::string competitor_command;
  bool dump_qubos = false;

  // generate
  int n = 60;
  int m = 60;
  double noise = 0.01;
  double density = 0.5;
  MatrixFormat out_format = MatrixFormat::binary;

  int resolved_reverse_samples() const;
  DriverConfig driver_config() const;
};

/// Every key understood in a config file.
const std::vector<std::string>& config_keys();

/// Parses `config` (already merged from file and flags) and validates it for
/// `command`. Throws ConfigError listing every invalid field, one per line.
RunOptions options_from_json(const nlohmann::json& config, Command command);

nlohmann::json to_json(const RunOptions& opts);

}  // namespace nbmf
