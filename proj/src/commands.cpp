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

#include "nbmf/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "nbmf/benchmark.hpp"
#include "nbmf/calibration.hpp"
#include "nbmf/checkpoint.hpp"
#include "nbmf/error.hpp"
#include "nbmf/io.hpp"
#include "nbmf/rng.hpp"
#include "nbmf/synthetic.hpp"

namespace nbmf {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

struct Manifest {
  Manifest(Command c, const RunOptions* o) : command(c), opts(o) {}

  Command command;
  const RunOptions* opts;
  std::string input_fingerprint;
  std::map<std::string, std::string> artifacts;
  Clock::time_point started = Clock::now();
  json extra = json::object();

  void write(const fs::path& dir) {
    const double wall = std::chrono::duration<double>(Clock::now() - started).count();
    json j = {{"tool", "nbmf"},
              {"version", NBMF_VERSION},
              {"command", to_string(command)},
              {"config", to_json(*opts)},
              {"input_fingerprint", input_fingerprint},
              {"artifacts", artifacts},
              {"timings", {{"wall_clock_s", wall}}}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    const fs::path path = dir / "manifest.json";
    write_file_atomic(path, j.dump(2) + "\n");
  }
};

fs::path prepare_out(const RunOptions& opts) {
  fs::path out(opts.out);
  fs::create_directories(out);
  return out;
}

DenseMatrix load_input(const RunOptions& opts, Manifest& manifest) {
  DenseMatrix a = ingest(opts.input, opts.format);
  if (opts.transpose) a = DenseMatrix(a.transpose());
  manifest.input_fingerprint = fingerprint(opts.input);
  return a;
}

std::string put_artifact(Manifest& manifest, const std::string& name, const fs::path& path) {
  manifest.artifacts[name] = path.string();
  return path.string();
}

json corpus_json(const std::vector<CorpusEntry>& corpus) {
  json arr = json::array();
  for (const auto& e : corpus) {
    json q = to_json(e.qubo);
    q["id"] = e.id;
    q["initial"] = std::vector<int>(e.initial.begin(), e.initial.end());
    arr.push_back(std::move(q));
  }
  return arr;
}

SamplerConfig sampler_from(const RunOptions& opts, int samples) {
  SamplerConfig sc;
  sc.num_samples = samples;
  sc.sweeps_per_microsecond = opts.sweeps_per_us;
  sc.hot_temperature_scale = opts.hot_temperature_scale;
  sc.seed = opts.seed;
  return sc;
}

}  // namespace

void cmd_factorize(const RunOptions& opts, std::ostream& log) {
  Manifest manifest{Command::factorize, &opts};
  const DenseMatrix a = load_input(opts, manifest);
  const fs::path out = prepare_out(opts);

  DriverConfig cfg = opts.driver_config();
  cfg.checkpoint_path = put_artifact(manifest, "checkpoint", out / "checkpoint.json");
  if (cfg.rank > a.rows() || cfg.rank > a.cols())
    log << "warning: rank " << cfg.rank << " exceeds a dimension of the " << a.rows() << "x"
        << a.cols() << " input\n";

  FactorizationState state;
  if (!opts.resume.empty()) {
    state = load_checkpoint(opts.resume);
    if (state.b.rows() != a.rows() || state.c.cols() != a.cols() || state.b.cols() != cfg.rank)
      throw DataError("checkpoint " + opts.resume + " does not match the input or rank");
    log << "resuming at iteration " << state.iteration << "\n";
  } else {
    state = init_state(a, cfg);
  }
  const ColumnObserver none;
  while (state.iteration < cfg.total_iterations) {
    step(state, a, cfg, none);
    const auto& rec = state.history.back();
    log << "iter " << rec.iteration << " [" << to_string(rec.mode)
        << "] residual=" << rec.relative_residual << " dB=" << rec.pct_change_b
        << " dC=" << rec.pct_change_c << " qpu_us=" << rec.cumulative_qpu_time_us << "\n";
  }
  if (state.history.empty()) save_checkpoint(cfg.checkpoint_path, state, cfg);

  write_file_atomic(put_artifact(manifest, "history", out / "history.csv"), history_csv(state));
  manifest.extra["final_relative_residual"] = state.relative_residual;
  manifest.extra["reverse_samples_per_qubo"] = cfg.reverse_samples_per_qubo;
  manifest.write(out);
}

void cmd_calibrate(const RunOptions& opts, std::ostream& log) {
  Manifest manifest{Command::calibrate, &opts};
  const DenseMatrix a = load_input(opts, manifest);
  const fs::path out = prepare_out(opts);

  std::vector<double> r_grid = opts.r_grid;
  if (r_grid.empty())
    for (int i = 0; i <= 20; ++i) r_grid.push_back(0.05 * i);

  DriverConfig cfg = opts.driver_config();
  const auto corpus = harvest_post_warmup_corpus(a, cfg, opts.corpus_size);
  log << "calibrating on " << corpus.size() << " QUBOs\n";
  const CalibrationReport report = calibrate(
      corpus, r_grid, opts.tr_grid, sampler_from(opts, opts.calibration_samples), opts.threads);

  write_file_atomic(put_artifact(manifest, "calibration", out / "calibration.csv"),
                    calibration_csv(report));
  if (opts.dump_qubos)
    write_file_atomic(put_artifact(manifest, "corpus", out / "corpus.json"),
                      corpus_json(corpus).dump() + "\n");
  json best = json::array();
  for (const auto& [t_r, r] : report.best_r_per_t_r) {
    best.push_back({{"t_r_us", t_r}, {"r", r}});
    log << "t_r=" << t_r << " us: best r=" << r << "\n";
  }
  manifest.extra["best_r"] = best;
  manifest.extra["corpus_size"] = corpus.size();
  manifest.write(out);
}

void cmd_benchmark(const RunOptions& opts, std::ostream& log) {
  Manifest manifest{Command::benchmark, &opts};
  const DenseMatrix a = load_input(opts, manifest);
  const fs::path out = prepare_out(opts);
  DriverConfig cfg = opts.driver_config();

  // Pick which reverse-phase (iteration, column) QUBOs to keep before running,
  // so memory stays bounded by corpus_size.
  const int reverse_iters = cfg.total_iterations - cfg.forward_warmup_iterations;
  const std::int64_t total = static_cast<std::int64_t>(reverse_iters) * a.cols();
  std::set<std::int64_t> keep;
  if (opts.corpus_size <= 0 || opts.corpus_size >= total) {
    for (std::int64_t i = 0; i < total; ++i) keep.insert(i);
  } else {
    Rng rng(derive_seed(opts.seed, {0xBE7C}));
    while (static_cast<int>(keep.size()) < opts.corpus_size)
      keep.insert(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(total)));
  }

  std::vector<CorpusEntry> corpus;
  auto collect = [&](const ColumnEvent& ev) {
    if (ev.mode != UpdateMode::reverse) return;
    const std::int64_t index =
        static_cast<std::int64_t>(ev.iteration - cfg.forward_warmup_iterations - 1) * a.cols() +
        ev.column;
    if (!keep.count(index)) return;
    corpus.push_back({"it" + std::to_string(ev.iteration) + "_col" + std::to_string(ev.column),
                      *ev.qubo, *ev.previous});
  };
  const FactorizationState state = run(a, cfg, collect);
  log << "factorization residual " << state.relative_residual << "; benchmarking "
      << corpus.size() << " reverse-phase QUBOs\n";

  BenchmarkConfig bc;
  bc.reversal_distance = cfg.reversal_distance;
  bc.reversal_time_us = cfg.reversal_time_us;
  bc.sampler = sampler_from(opts, cfg.reverse_samples_per_qubo);
  bc.max_time_us = opts.tabu_max_time_us;
  bc.reverse_cost = cfg.reverse_cost;

  std::unique_ptr<Competitor> competitor;
  if (opts.competitor_command.empty())
    competitor = std::make_unique<TabuCompetitor>(TabuConfig{0, 0, opts.seed});
  else
    competitor = std::make_unique<ExternalCompetitor>(opts.competitor_command,
                                                      (out / "competitor").string());
  const BenchmarkResult result = run_benchmark(corpus, bc, *competitor);

  write_file_atomic(put_artifact(manifest, "benchmark", out / "benchmark.csv"),
                    benchmark_csv(result));
  json summary = summary_json(result.summary);
  summary["competitor"] = competitor->name();
  write_file_atomic(put_artifact(manifest, "summary", out / "benchmark_summary.json"),
                    summary.dump(2) + "\n");
  if (opts.dump_qubos)
    write_file_atomic(put_artifact(manifest, "corpus", out / "corpus.json"),
                      corpus_json(corpus).dump() + "\n");
  log << "improved " << result.summary.improved << "/" << result.summary.qubos
      << ", total time to target " << result.summary.total_time_to_target_us << " us\n";
  manifest.write(out);
}

void cmd_generate(const RunOptions& opts, std::ostream& log) {
  Manifest manifest{Command::generate, &opts};
  const fs::path out = prepare_out(opts);
  const PlantedInstance inst =
      generate_synthetic(opts.n, opts.m, opts.rank, opts.noise, opts.density, opts.seed);
  const std::string ext = opts.out_format == MatrixFormat::csv ? ".csv" : ".bin";
  export_matrix(put_artifact(manifest, "A", out / ("A" + ext)), inst.a, opts.out_format);
  export_matrix(put_artifact(manifest, "B", out / ("B" + ext)), inst.b, opts.out_format);
  export_matrix(put_artifact(manifest, "C", out / ("C" + ext)), inst.c.cast<double>(),
                opts.out_format);
  log << "wrote planted " << opts.n << "x" << opts.m << " rank-" << opts.rank << " instance to "
      << out.string() << "\n";
  manifest.input_fingerprint = fingerprint(out / ("A" + ext));
  manifest.write(out);
}

int run_command(Command command, const RunOptions& opts, std::ostream& log, std::ostream& err) {
  try {
    switch (command) {
      case Command::factorize: cmd_factorize(opts, log); break;
      case Command::calibrate: cmd_calibrate(opts, log); break;
      case Command::benchmark: cmd_benchmark(opts, log); break;
      case Command::generate: cmd_generate(opts, log); break;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

namespace {

enum class Kind { number, text, flag };

struct FlagSpec {
  const char* flag;
  const char* key;
  Kind kind;
  const char* help;
};

// Flags shared by the analysis commands, then generate-only flags.
constexpr FlagSpec kFlags[] = {
    {"--input", "input", Kind::text, "Input matrix path (file or PGM directory)"},
    {"--format", "format", Kind::text, "Input format: csv, binary, pgm-dir"},
    {"--transpose", "transpose", Kind::flag, "Transpose the input after loading"},
    {"--rank", "rank", Kind::number, "Factorization rank k"},
    {"--iterations", "iterations", Kind::number, "Total alternating iterations"},
    {"--warmup", "warmup", Kind::number, "Forward-anneal iterations before reverse annealing"},
    {"--mode", "mode", Kind::text, "forward-only or hybrid"},
    {"--r", "r", Kind::number, "Reversal distance in [0, 1]"},
    {"--tr", "tr", Kind::number, "Reversal time in microseconds"},
    {"--forward-samples", "forward_samples", Kind::number, "Forward anneals per QUBO"},
    {"--reverse-samples", "reverse_samples", Kind::text,
     "Reverse anneals per QUBO, or auto-equal-time"},
    {"--rounded-ratio", "rounded_ratio", Kind::flag,
     "auto-equal-time uses the rounded 0.24 factor"},
    {"--sweeps-per-us", "sweeps_per_us", Kind::number, "Metropolis sweeps per simulated us"},
    {"--hot-temperature-scale", "hot_temperature_scale", Kind::number,
     "T(s=0) as a multiple of the largest |QUBO coefficient|"},
    {"--init-density", "init_density", Kind::number, "Bernoulli density of the initial C"},
    {"--nnls-max-iterations", "nnls_max_iterations", Kind::number, "NNLS iteration cap"},
    {"--nnls-tolerance", "nnls_tolerance", Kind::number, "NNLS projected-gradient tolerance"},
    {"--ridge", "ridge", Kind::number, "NNLS ridge penalty"},
    {"--resume", "resume", Kind::text, "Resume factorize from a checkpoint"},
    {"--corpus-size", "corpus_size", Kind::number, "QUBOs kept for calibrate/benchmark"},
    {"--r-grid", "r_grid", Kind::text, "Comma-separated reversal distances"},
    {"--tr-grid", "tr_grid", Kind::text, "Comma-separated reversal times (us)"},
    {"--calibration-samples", "calibration_samples", Kind::number,
     "Reverse samples per QUBO per grid point"},
    {"--tabu-max-time-us", "tabu_max_time_us", Kind::number, "Classical solver time limit"},
    {"--competitor-command", "competitor_command", Kind::text,
     "External solver command replacing tabu search"},
    {"--dump-qubos", "dump_qubos", Kind::flag, "Write the QUBO corpus as JSON"},
    {"--seed", "seed", Kind::number, "Master seed"},
    {"--threads", "threads", Kind::number, "Worker threads (0 = auto)"},
    {"--out", "out", Kind::text, "Output directory"},
    {"--n", "n", Kind::number, "generate: rows"},
    {"--m", "m", Kind::number, "generate: columns"},
    {"--noise", "noise", Kind::number, "generate: noise standard deviation"},
    {"--density", "density", Kind::number, "generate: density of planted C"},
    {"--out-format", "out_format", Kind::text, "generate: csv or binary"},
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
  CLI::App app{"Nonnegative/binary matrix factorization with simulated reverse annealing", "nbmf"};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;

  const std::vector<std::pair<Command, std::string>> commands = {
      {Command::factorize, "Run the alternating factorization"},
      {Command::calibrate, "Reverse-anneal calibration over an r / t_r grid"},
      {Command::benchmark, "Time-to-target comparison against a classical solver"},
      {Command::generate, "Write a planted synthetic instance"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [cmd, desc] : commands) {
    CLI::App* sub = app.add_subcommand(to_string(cmd), desc);
    sub->add_option("--config", config_path, "JSON config file; flags override its values");
    for (const auto& f : kFlags) {
      if (f.kind == Kind::flag)
        sub->add_flag(f.flag, switches[f.key], f.help);
      else
        sub->add_option(f.flag, values[f.key], f.help)
            ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)
            ->type_name(f.kind == Kind::number ? "NUMBER" : "VALUE");
    }
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    log << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    log << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Command command = Command::factorize;
  CLI::App* chosen = nullptr;
  for (std::size_t i = 0; i < subs.size(); ++i)
    if (subs[i]->parsed()) {
      command = commands[i].first;
      chosen = subs[i];
    }

  json config = json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      err << "error: cannot open config file " << config_path << "\n";
      return kExitUsage;
    }
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      err << "error: config file " << config_path << ": " << e.what() << "\n";
      return kExitUsage;
    }
  }
  for (const auto& f : kFlags) {
    if (chosen->count(f.flag) == 0) continue;
    switch (f.kind) {
      case Kind::flag: config[f.key] = true; break;
      case Kind::text: config[f.key] = values[f.key]; break;
      case Kind::number: {
        const json parsed = json::parse(values[f.key], nullptr, false);
        config[f.key] = parsed.is_number() ? parsed : json(values[f.key]);
        break;
      }
    }
  }

  RunOptions opts;
  try {
    opts = options_from_json(config, command);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return run_command(command, opts, log, err);
}

}  // namespace nbmf
