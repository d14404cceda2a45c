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

// Alternating least squares for A ~= B C with B >= 0 and C binary.
// Each iteration solves B by nonnegative least squares, then every column of
// C as an independent QUBO handed to a sampler. The first
// `forward_warmup_iterations` use forward annealing (global search, no
// fallback to the current column); later iterations reverse-anneal from the
// current column and keep it unless a strictly better state is found.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nbmf/cost.hpp"
#include "nbmf/matrix.hpp"
#include "nbmf/nnls.hpp"
#include "nbmf/qubo.hpp"
#include "nbmf/sampler.hpp"

namespace nbmf {

enum class UpdateMode {
  forward,
  reverse,
  exact,  // brute-force argmin per column; for tests and small k
};

const char* to_string(UpdateMode mode);

struct DriverConfig {
  int rank = 8;
  int total_iterations = 10;
  int forward_warmup_iterations = 1;
  double reversal_distance = 0.45;
  double reversal_time_us = 10.0;
  int forward_samples_per_qubo = 1000;
  int reverse_samples_per_qubo = 240;
  /// num_samples is overridden per mode; seed is ignored in favour of master_seed.
  SamplerConfig sampler;
  NnlsConfig nnls;
  std::uint64_t master_seed = 0;
  double init_density = 0.5;
  unsigned threads = 1;
  CostModel forward_cost = default_forward_cost();
  CostModel reverse_cost = default_reverse_cost();
  /// Written atomically after every iteration when nonempty.
  std::string checkpoint_path;

  void validate() const;
  UpdateMode mode_for_iteration(int iteration) const;  // 1-based
};

struct IterationRecord {
  int iteration = 0;
  UpdateMode mode = UpdateMode::forward;
  double relative_residual = 0.0;
  double pct_change_b = 0.0;
  double pct_change_c = 0.0;
  Microseconds cumulative_qpu_time_us = 0;
  /// Sum over columns of ||A_j - B C_j||^2 after the C update.
  double column_residual_sum = 0.0;
  bool nnls_converged = true;
};

struct FactorizationState {
  int iteration = 0;
  DenseMatrix b;
  BinaryMatrix c;
  double relative_residual = 0.0;
  std::vector<IterationRecord> history;
};

/// One column solve inside update_c.
struct ColumnEvent {
  int iteration = 0;
  Eigen::Index column = 0;
  UpdateMode mode = UpdateMode::forward;
  const Qubo* qubo = nullptr;
  const BinaryVector* previous = nullptr;
  const BinaryVector* updated = nullptr;
};
/// Invoked in column order after each C update, on the calling thread.
using ColumnObserver = std::function<void(const ColumnEvent&)>;

FactorizationState init_state(const DenseMatrix& a, const DriverConfig& cfg);

/// Replaces B with the NNLS solution against the current C.
NnlsResult update_b(FactorizationState& state, const DenseMatrix& a, const DriverConfig& cfg);

/// Re-solves every column of C against the current B. `iteration` picks the
/// RNG streams (1-based; defaults to state.iteration + 1).
void update_c(FactorizationState& state, const DenseMatrix& a, const DriverConfig& cfg,
              UpdateMode mode, const ColumnObserver& observer = {},
              std::optional<int> iteration = std::nullopt);

/// One full iteration (update_b then update_c) with history bookkeeping.
void step(FactorizationState& state, const DenseMatrix& a, const DriverConfig& cfg,
          const ColumnObserver& observer = {});

/// init_state followed by total_iterations steps.
FactorizationState run(const DenseMatrix& a, const DriverConfig& cfg,
                       const ColumnObserver& observer = {});

/// Continues `state` until cfg.total_iterations are done.
void resume(FactorizationState& state, const DenseMatrix& a, const DriverConfig& cfg,
            const ColumnObserver& observer = {});

/// Samples simulated QPU time for one iteration over m columns.
Microseconds iteration_qpu_time(const DriverConfig& cfg, UpdateMode mode, Eigen::Index columns);

}  // namespace nbmf
