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

#include "nbmf/config.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

#include "nbmf/error.hpp"

namespace nbmf {

using nlohmann::json;

Command parse_command(const std::string& name) {
  if (name == "factorize") return Command::factorize;
  if (name == "calibrate") return Command::calibrate;
  if (name == "benchmark") return Command::benchmark;
  if (name == "generate") return Command::generate;
  throw ConfigError("unknown command '" + name + "'");
}

const char* to_string(Command command) {
  switch (command) {
    case Command::factorize: return "factorize";
    case Command::calibrate: return "calibrate";
    case Command::benchmark: return "benchmark";
    case Command::generate: return "generate";
  }
  return "unknown";
}

int RunOptions::resolved_reverse_samples() const {
  if (reverse_samples) return *reverse_samples;
  return static_cast<int>(equal_time_reverse_count(forward_samples, rounded_ratio));
}

DriverConfig RunOptions::driver_config() const {
  DriverConfig cfg;
  cfg.rank = rank;
  cfg.total_iterations = iterations;
  cfg.forward_warmup_iterations = forward_only ? iterations : warmup;
  cfg.reversal_distance = r;
  cfg.reversal_time_us = tr;
  cfg.forward_samples_per_qubo = forward_samples;
  cfg.reverse_samples_per_qubo = resolved_reverse_samples();
  cfg.sampler.sweeps_per_microsecond = sweeps_per_us;
  cfg.sampler.hot_temperature_scale = hot_temperature_scale;
  cfg.nnls.max_iterations = nnls_max_iterations;
  cfg.nnls.tolerance = nnls_tolerance;
  cfg.nnls.ridge = ridge;
  cfg.nnls.threads = threads;
  cfg.master_seed = seed;
  cfg.init_density = init_density;
  cfg.threads = threads;
  return cfg;
}

namespace {

using Setter = std::function<void(RunOptions&, const json&)>;

struct Field {
  std::string key;
  Setter set;
};

template <typename T>
Setter number(T RunOptions::*member) {
  return [member](RunOptions& o, const json& v) {
    if (!v.is_number()) throw ConfigError("must be a number");
    if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError("must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && v.get<std::int64_t>() < 0)
          throw ConfigError("must be nonnegative");
      }
    }
    o.*member = v.get<T>();
  };
}

Setter string(std::string RunOptions::*member) {
  return [member](RunOptions& o, const json& v) {
    if (!v.is_string()) throw ConfigError("must be a string");
    o.*member = v.get<std::string>();
  };
}

Setter boolean(bool RunOptions::*member) {
  return [member](RunOptions& o, const json& v) {
    if (!v.is_boolean()) throw ConfigError("must be true or false");
    o.*member = v.get<bool>();
  };
}

Setter format(MatrixFormat RunOptions::*member) {
  return [member](RunOptions& o, const json& v) {
    if (!v.is_string()) throw ConfigError("must be a string");
    o.*member = parse_format(v.get<std::string>());
  };
}

Setter real_list(std::vector<double> RunOptions::*member) {
  return [member](RunOptions& o, const json& v) {
    std::vector<double> out;
    if (v.is_array()) {
      for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError("must be a list of numbers");
        out.push_back(x.get<double>());
      }
    } else if (v.is_string()) {
      std::stringstream ss(v.get<std::string>());
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double d = 0.0;
        try {
          d = std::stod(item, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || used != item.size()) throw ConfigError("bad number '" + item + "'");
        out.push_back(d);
      }
    } else {
      throw ConfigError("must be a list of numbers or a comma-separated string");
    }
    o.*member = std::move(out);
  };
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"input", string(&RunOptions::input)},
      {"format", format(&RunOptions::format)},
      {"transpose", boolean(&RunOptions::transpose)},
      {"out", string(&RunOptions::out)},
      {"seed", number(&RunOptions::seed)},
      {"threads", number(&RunOptions::threads)},
      {"rank", number(&RunOptions::rank)},
      {"iterations", number(&RunOptions::iterations)},
      {"warmup", number(&RunOptions::warmup)},
      {"mode",
       [](RunOptions& o, const json& v) {
         if (v == "forward-only")
           o.forward_only = true;
         else if (v == "hybrid")
           o.forward_only = false;
         else
           throw ConfigError("must be forward-only or hybrid");
       }},
      {"r", number(&RunOptions::r)},
      {"tr", number(&RunOptions::tr)},
      {"forward_samples", number(&RunOptions::forward_samples)},
      {"reverse_samples",
       [](RunOptions& o, const json& v) {
         if (v == "auto-equal-time") {
           o.reverse_samples.reset();
         } else if (v.is_number_integer()) {
           o.reverse_samples = v.get<int>();
         } else if (v.is_string()) {
           const std::string s = v.get<std::string>();
           if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit))
             throw ConfigError("must be a count or auto-equal-time");
           o.reverse_samples = std::stoi(s);
         } else {
           throw ConfigError("must be a count or auto-equal-time");
         }
       }},
      {"rounded_ratio", boolean(&RunOptions::rounded_ratio)},
      {"sweeps_per_us", number(&RunOptions::sweeps_per_us)},
      {"hot_temperature_scale", number(&RunOptions::hot_temperature_scale)},
      {"init_density", number(&RunOptions::init_density)},
      {"nnls_max_iterations", number(&RunOptions::nnls_max_iterations)},
      {"nnls_tolerance", number(&RunOptions::nnls_tolerance)},
      {"ridge", number(&RunOptions::ridge)},
      {"resume", string(&RunOptions::resume)},
      {"corpus_size", number(&RunOptions::corpus_size)},
      {"r_grid", real_list(&RunOptions::r_grid)},
      {"tr_grid", real_list(&RunOptions::tr_grid)},
      {"calibration_samples", number(&RunOptions::calibration_samples)},
      {"tabu_max_time_us", number(&RunOptions::tabu_max_time_us)},
      {"competitor_command", string(&RunOptions::competitor_command)},
      {"dump_qubos", boolean(&RunOptions::dump_qubos)},
      {"n", number(&RunOptions::n)},
      {"m", number(&RunOptions::m)},
      {"noise", number(&RunOptions::noise)},
      {"density", number(&RunOptions::density)},
      {"out_format", format(&RunOptions::out_format)},
  };
  return table;
}

std::vector<std::string> validate(const RunOptions& o, Command command) {
  std::vector<std::string> errors;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) errors.push_back(msg);
  };
  const bool needs_input = command != Command::generate;
  if (needs_input) check(!o.input.empty(), "input: required");
  check(!o.out.empty(), "out: required");

  if (command == Command::generate) {
    check(o.n >= 1, "n: must be >= 1");
    check(o.m >= 1, "m: must be >= 1");
    check(o.rank >= 1 && o.rank <= std::min(o.n, o.m), "rank: must lie in [1, min(n, m)]");
    check(o.noise >= 0.0, "noise: must be >= 0");
    check(o.density > 0.0 && o.density < 1.0, "density: must lie in (0, 1)");
    check(o.out_format != MatrixFormat::pgm_dir, "out_format: must be csv or binary");
    return errors;
  }

  check(o.rank >= 1, "rank: must be >= 1");
  check(o.iterations >= 0, "iterations: must be >= 0");
  check(o.warmup >= 0 && o.warmup <= o.iterations, "warmup: must lie in [0, iterations]");
  check(o.r >= 0.0 && o.r <= 1.0, "r: must lie in [0, 1]");
  check(o.tr > 0.0, "tr: must be positive");
  check(o.forward_samples >= 1, "forward_samples: must be >= 1");
  check(!o.reverse_samples || *o.reverse_samples >= 1, "reverse_samples: must be >= 1");
  check(o.sweeps_per_us >= 1, "sweeps_per_us: must be >= 1");
  check(o.hot_temperature_scale > 0.0, "hot_temperature_scale: must be positive");
  check(o.init_density > 0.0 && o.init_density <= 1.0, "init_density: must lie in (0, 1]");
  check(o.nnls_max_iterations >= 1, "nnls_max_iterations: must be >= 1");
  check(o.nnls_tolerance > 0.0, "nnls_tolerance: must be positive");
  check(o.ridge >= 0.0, "ridge: must be >= 0");

  if (command == Command::calibrate) {
    check(o.warmup >= 1, "warmup: calibration needs at least one forward iteration");
    for (double r : o.r_grid) check(r >= 0.0 && r <= 1.0, "r_grid: values must lie in [0, 1]");
    check(!o.tr_grid.empty(), "tr_grid: required");
    for (double t : o.tr_grid) check(t > 0.0, "tr_grid: values must be positive");
    check(o.calibration_samples >= 1, "calibration_samples: must be >= 1");
  }
  if (command == Command::benchmark) {
    check(o.tabu_max_time_us > 0.0, "tabu_max_time_us: must be positive");
    check(!o.forward_only, "mode: benchmark requires hybrid mode");
    check(o.iterations > o.warmup, "iterations: benchmark needs iterations > warmup");
  }
  return errors;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

RunOptions options_from_json(const json& config, Command command) {
  if (!config.is_object()) throw ConfigError("config: top level must be a JSON object");
  RunOptions opts;
  std::vector<std::string> errors;
  for (const auto& [key, value] : config.items()) {
    const auto& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
    if (it == table.end()) {
      errors.push_back(key + ": unknown option");
      continue;
    }
    try {
      it->set(opts, value);
    } catch (const std::exception& e) {
      errors.push_back(key + ": " + e.what());
    }
  }
  for (auto& e : validate(opts, command)) errors.push_back(std::move(e));
  if (!errors.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  " + e;
    throw ConfigError(msg);
  }
  return opts;
}

json to_json(const RunOptions& o) {
  json j = {
      {"input", o.input},
      {"format", to_string(o.format)},
      {"transpose", o.transpose},
      {"out", o.out},
      {"seed", o.seed},
      {"threads", o.threads},
      {"rank", o.rank},
      {"iterations", o.iterations},
      {"warmup", o.warmup},
      {"mode", o.forward_only ? "forward-only" : "hybrid"},
      {"r", o.r},
      {"tr", o.tr},
      {"forward_samples", o.forward_samples},
      {"rounded_ratio", o.rounded_ratio},
      {"sweeps_per_us", o.sweeps_per_us},
      {"hot_temperature_scale", o.hot_temperature_scale},
      {"init_density", o.init_density},
      {"nnls_max_iterations", o.nnls_max_iterations},
      {"nnls_tolerance", o.nnls_tolerance},
      {"ridge", o.ridge},
      {"resume", o.resume},
      {"corpus_size", o.corpus_size},
      {"r_grid", o.r_grid},
      {"tr_grid", o.tr_grid},
      {"calibration_samples", o.calibration_samples},
      {"tabu_max_time_us", o.tabu_max_time_us},
      {"competitor_command", o.competitor_command},
      {"dump_qubos", o.dump_qubos},
      {"n", o.n},
      {"m", o.m},
      {"noise", o.noise},
      {"density", o.density},
      {"out_format", to_string(o.out_format)},
  };
  if (o.reverse_samples)
    j["reverse_samples"] = *o.reverse_samples;
  else
    j["reverse_samples"] = "auto-equal-time";
  return j;
}

}  // namespace nbmf
