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

#include "nbmf/benchmark.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nbmf/checkpoint.hpp"
#include "nbmf/error.hpp"
#include "nbmf/rng.hpp"

namespace nbmf {

using nlohmann::json;

CompetitorResult TabuCompetitor::solve(const Qubo& qubo, const BinaryVector& initial,
                                       double target_energy, double max_time_us) {
  TabuConfig cfg = cfg_;
  cfg.seed = derive_seed(cfg_.seed, {calls_++});
  TabuResult r = tabu_solve(qubo, initial, target_energy, max_time_us, cfg);
  return {std::move(r.best), r.energy, r.time_to_target_us};
}

ExternalCompetitor::ExternalCompetitor(std::string command, std::string work_dir)
    : command_(std::move(command)), work_dir_(std::move(work_dir)) {}

CompetitorResult ExternalCompetitor::solve(const Qubo& qubo, const BinaryVector& initial,
                                           double target_energy, double max_time_us) {
  namespace fs = std::filesystem;
  fs::create_directories(work_dir_);
  const std::string stem = "competitor_" + std::to_string(calls_++);
  const fs::path request = fs::path(work_dir_) / (stem + "_request.json");
  const fs::path response = fs::path(work_dir_) / (stem + "_response.json");

  json req = to_json(qubo);
  req["initial"] = std::vector<int>(initial.begin(), initial.end());
  req["target_energy"] = target_energy;
  req["max_time_us"] = max_time_us;
  write_file_atomic(request, req.dump());

  const std::string cmd =
      command_ + " '" + request.string() + "' '" + response.string() + "'";
  if (std::system(cmd.c_str()) != 0) throw DataError("external competitor failed: " + cmd);

  std::ifstream in(response);
  if (!in) throw DataError("external competitor wrote no response at " + response.string());
  CompetitorResult out;
  try {
    const json res = json::parse(in);
    const auto state = res.at("state").get<std::vector<int>>();
    detail::require_dims(static_cast<Eigen::Index>(state.size()) == qubo.size(),
                         "external competitor returned a state of the wrong length");
    out.best.resize(qubo.size());
    for (Eigen::Index i = 0; i < qubo.size(); ++i) out.best[i] = state[i] ? 1 : 0;
    if (!res.at("time_to_target_us").is_null())
      out.time_to_target_us = res.at("time_to_target_us").get<double>();
  } catch (const json::exception& e) {
    throw DataError("external competitor response " + response.string() + ": " + e.what());
  }
  out.energy = energy(qubo, out.best);
  if (out.time_to_target_us && out.energy > target_energy) out.time_to_target_us.reset();
  return out;
}

BenchmarkResult run_benchmark(const std::vector<CorpusEntry>& corpus, const BenchmarkConfig& cfg,
                              Competitor& competitor) {
  if (corpus.empty()) throw ConfigError("run_benchmark: empty corpus");
  cfg.sampler.validate();
  if (!(cfg.max_time_us > 0.0)) throw ConfigError("run_benchmark: max_time must be positive");

  BenchmarkResult result;
  auto& s = result.summary;
  for (std::size_t e = 0; e < corpus.size(); ++e) {
    const auto& entry = corpus[e];
    BenchmarkRecord rec;
    rec.qubo_id = entry.id;
    rec.initial_energy = energy(entry.qubo, entry.initial);
    const SampleSet set = reverse_sample(entry.qubo, entry.initial, cfg.reversal_distance,
                                         cfg.reversal_time_us, cfg.sampler, e);
    rec.reverse_best_energy = set.best_energy;
    rec.simulated_qpu_time_us = access_time(cfg.reverse_cost, cfg.sampler.num_samples);
    rec.improved = rec.reverse_best_energy < rec.initial_energy;

    if (!rec.improved) {
      rec.time_to_target_us = 0.0;
      rec.classical_energy = rec.initial_energy;
      rec.excluded_from_plot = true;
    } else {
      CompetitorResult c =
          competitor.solve(entry.qubo, entry.initial, rec.reverse_best_energy, cfg.max_time_us);
      rec.time_to_target_us = c.time_to_target_us;
      rec.classical_energy = c.energy;
    }

    ++s.qubos;
    if (rec.improved) ++s.improved;
    if (rec.reached()) {
      ++s.reached;
      s.total_time_to_target_us += *rec.time_to_target_us;
    } else {
      ++s.not_reached;
    }
    s.total_annealing_time_us += cfg.reverse_cost.anneal_us * cfg.sampler.num_samples;
    s.total_qpu_access_time_us += rec.simulated_qpu_time_us;
    result.records.push_back(std::move(rec));
  }
  return result;
}

std::string benchmark_csv(const BenchmarkResult& result) {
  std::ostringstream out;
  out << "qubo_id,initial_energy,reverse_best_energy,simulated_qpu_time_us,time_to_target_us,"
         "reached,excluded_from_plot\n";
  char buf[32];
  auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : result.records) {
    out << r.qubo_id << ',' << real(r.initial_energy) << ',' << real(r.reverse_best_energy) << ','
        << r.simulated_qpu_time_us << ','
        << (r.time_to_target_us ? real(*r.time_to_target_us) : std::string("not_reached")) << ','
        << (r.reached() ? 1 : 0) << ',' << (r.excluded_from_plot ? 1 : 0) << '\n';
  }
  return out.str();
}

json summary_json(const BenchmarkSummary& s) {
  return {{"qubos", s.qubos},
          {"improved", s.improved},
          {"reached", s.reached},
          {"not_reached", s.not_reached},
          {"total_time_to_target_us", s.total_time_to_target_us},
          {"total_annealing_time_us", s.total_annealing_time_us},
          {"total_qpu_access_time_us", s.total_qpu_access_time_us}};
}

}  // namespace nbmf
