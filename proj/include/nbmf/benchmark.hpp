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

// Time-to-target benchmark: how long a classical solver, warm-started at the
// reverse anneal's initial state, needs to match the reverse anneal's best
// energy on the same QUBO.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nbmf/calibration.hpp"
#include "nbmf/cost.hpp"
#include "nbmf/sampler.hpp"
#include "nbmf/tabu.hpp"

namespace nbmf {

struct CompetitorResult {
  BinaryVector best;
  double energy = 0.0;
  std::optional<double> time_to_target_us;
};

/// A classical solver racing to a target energy from a warm start.
class Competitor {
 public:
  virtual ~Competitor() = default;
  virtual std::string name() const = 0;
  virtual CompetitorResult solve(const Qubo& qubo, const BinaryVector& initial,
                                 double target_energy, double max_time_us) = 0;
};

class TabuCompetitor : public Competitor {
 public:
  explicit TabuCompetitor(TabuConfig cfg = {}) : cfg_(cfg) {}
  std::string name() const override { return "tabu"; }
  CompetitorResult solve(const Qubo& qubo, const BinaryVector& initial, double target_energy,
                         double max_time_us) override;

 private:
  TabuConfig cfg_;
  std::uint64_t calls_ = 0;
};

/// Runs an external program per QUBO. The program receives the path of a JSON
/// request {k, linear, quadratic, offset, initial, target_energy, max_time_us}
/// followed by the path where it must write {state, energy, time_to_target_us}
/// (time_to_target_us null when not reached). Energies are re-scored locally.
class ExternalCompetitor : public Competitor {
 public:
  ExternalCompetitor(std::string command, std::string work_dir);
  std::string name() const override { return "external"; }
  CompetitorResult solve(const Qubo& qubo, const BinaryVector& initial, double target_energy,
                         double max_time_us) override;

 private:
  std::string command_;
  std::string work_dir_;
  std::uint64_t calls_ = 0;
};

struct BenchmarkConfig {
  double reversal_distance = 0.45;
  double reversal_time_us = 10.0;
  /// sampler.num_samples is the reverse sample count per QUBO.
  SamplerConfig sampler;
  double max_time_us = 1e6;
  CostModel reverse_cost = default_reverse_cost();
};

struct BenchmarkRecord {
  std::string qubo_id;
  double initial_energy = 0.0;
  double reverse_best_energy = 0.0;
  Microseconds simulated_qpu_time_us = 0;
  /// 0 for non-improved QUBOs; empty when the competitor timed out.
  std::optional<double> time_to_target_us;
  double classical_energy = 0.0;
  bool improved = false;
  bool excluded_from_plot = false;

  bool reached() const { return time_to_target_us.has_value(); }
};

struct BenchmarkSummary {
  std::size_t qubos = 0;
  std::size_t improved = 0;
  std::size_t reached = 0;
  std::size_t not_reached = 0;
  double total_time_to_target_us = 0.0;
  Microseconds total_annealing_time_us = 0;
  Microseconds total_qpu_access_time_us = 0;
};

struct BenchmarkResult {
  std::vector<BenchmarkRecord> records;
  BenchmarkSummary summary;
};

/// Entries run sequentially so wall-clock timings are not perturbed.
BenchmarkResult run_benchmark(const std::vector<CorpusEntry>& corpus, const BenchmarkConfig& cfg,
                              Competitor& competitor);

/// qubo_id,initial_energy,reverse_best_energy,simulated_qpu_time_us,time_to_target_us,reached,excluded_from_plot
std::string benchmark_csv(const BenchmarkResult& result);
nlohmann::json summary_json(const BenchmarkSummary& summary);

}  // namespace nbmf
