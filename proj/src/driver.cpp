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

#include "nbmf/driver.hpp"

#include <string>

#include "nbmf/checkpoint.hpp"
#include "nbmf/error.hpp"
#include "nbmf/parallel.hpp"
#include "nbmf/rng.hpp"

namespace nbmf {

const char* to_string(UpdateMode mode) {
  switch (mode) {
    case UpdateMode::forward: return "forward";
    case UpdateMode::reverse: return "reverse";
    case UpdateMode::exact: return "exact";
  }
  return "unknown";
}

void DriverConfig::validate() const {
  if (rank < 1) throw ConfigError("driver: rank must be >= 1");
  if (total_iterations < 0) throw ConfigError("driver: total_iterations must be >= 0");
  if (forward_warmup_iterations < 0 || forward_warmup_iterations > total_iterations)
    throw ConfigError("driver: forward_warmup_iterations must lie in [0, total_iterations]");
  if (!(reversal_distance >= 0.0 && reversal_distance <= 1.0))
    throw ConfigError("driver: reversal distance must lie in [0, 1]");
  if (!(reversal_time_us > 0.0)) throw ConfigError("driver: reversal time must be positive");
  if (forward_samples_per_qubo < 1) throw ConfigError("driver: forward samples must be >= 1");
  if (reverse_samples_per_qubo < 1) throw ConfigError("driver: reverse samples must be >= 1");
  if (!(init_density > 0.0 && init_density <= 1.0))
    throw ConfigError("driver: init_density must lie in (0, 1]");
  SamplerConfig probe = sampler;
  probe.num_samples = 1;
  probe.validate();
  nnls.validate();
  forward_cost.validate();
  reverse_cost.validate();
}

UpdateMode DriverConfig::mode_for_iteration(int iteration) const {
  return iteration <= forward_warmup_iterations ? UpdateMode::forward : UpdateMode::reverse;
}

Microseconds iteration_qpu_time(const DriverConfig& cfg, UpdateMode mode, Eigen::Index columns) {
  switch (mode) {
    case UpdateMode::forward:
      return access_time(cfg.forward_cost, cfg.forward_samples_per_qubo) * columns;
    case UpdateMode::reverse:
      return access_time(cfg.reverse_cost, cfg.reverse_samples_per_qubo) * columns;
    case UpdateMode::exact: return 0;
  }
  return 0;
}

namespace {

NnlsConfig nnls_for(const DriverConfig& cfg) {
  NnlsConfig n = cfg.nnls;
  n.threads = cfg.threads;
  return n;
}

}  // namespace

FactorizationState init_state(const DenseMatrix& a, const DriverConfig& cfg) {
  cfg.validate();
  if (a.size() == 0) throw DataError("init_state: A is empty");
  if (!(a.norm() > 0.0)) throw DataError("init_state: A is identically zero");

  FactorizationState state;
  Rng rng(derive_seed(cfg.master_seed, {0xC0}));
  state.c.resize(cfg.rank, a.cols());
  for (Eigen::Index i = 0; i < state.c.rows(); ++i)
    for (Eigen::Index j = 0; j < state.c.cols(); ++j)
      state.c(i, j) = uniform01(rng) < cfg.init_density ? 1 : 0;
  state.b = solve_nonnegative(a, state.c, nnls_for(cfg)).x;
  state.relative_residual = relative_residual(a, state.b, state.c);
  return state;
}

NnlsResult update_b(FactorizationState& state, const DenseMatrix& a, const DriverConfig& cfg) {
  NnlsResult result = solve_nonnegative(a, state.c, nnls_for(cfg), &state.b);
  state.b = result.x;
  return result;
}

void update_c(FactorizationState& state, const DenseMatrix& a, const DriverConfig& cfg,
              UpdateMode mode, const ColumnObserver& observer, std::optional<int> iteration) {
  detail::require_dims(a.rows() == state.b.rows() && a.cols() == state.c.cols() &&
                           state.b.cols() == state.c.rows(),
                       "update_c: state does not conform to A");
  const int iter = iteration.value_or(state.iteration + 1);
  const Eigen::Index m = a.cols();
  std::vector<Qubo> qubos(static_cast<std::size_t>(m));
  std::vector<BinaryVector> previous(static_cast<std::size_t>(m));
  std::vector<BinaryVector> updated(static_cast<std::size_t>(m));

  parallel_for(static_cast<std::size_t>(m), cfg.threads, [&](std::size_t jj) {
    const auto j = static_cast<Eigen::Index>(jj);
    qubos[jj] = build_column_qubo(state.b, a.col(j));
    previous[jj] = state.c.col(j);
    SamplerConfig sc = cfg.sampler;
    sc.seed = derive_seed(cfg.master_seed,
                          {static_cast<std::uint64_t>(iter), static_cast<std::uint64_t>(j)});
    switch (mode) {
      case UpdateMode::forward:
        sc.num_samples = cfg.forward_samples_per_qubo;
        updated[jj] = forward_sample(qubos[jj], sc).best_state;
        break;
      case UpdateMode::reverse:
        sc.num_samples = cfg.reverse_samples_per_qubo;
        updated[jj] = reverse_sample(qubos[jj], previous[jj], cfg.reversal_distance,
                                     cfg.reversal_time_us, sc)
                          .best_state;
        break;
      case UpdateMode::exact: updated[jj] = exact_solve(qubos[jj]).state; break;
    }
  });

  for (Eigen::Index j = 0; j < m; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    state.c.col(j) = updated[jj];
    if (observer)
      observer(ColumnEvent{iter, j, mode, &qubos[jj], &previous[jj], &updated[jj]});
  }
}

void step(FactorizationState& state, const DenseMatrix& a, const DriverConfig& cfg,
          const ColumnObserver& observer) {
  const int iter = state.iteration + 1;
  const UpdateMode mode = cfg.mode_for_iteration(iter);
  IterationRecord rec;
  rec.iteration = iter;
  rec.mode = mode;

  const DenseMatrix b_prev = state.b;
  const NnlsResult nnls = update_b(state, a, cfg);
  rec.nnls_converged = nnls.converged;
  const double b_norm = b_prev.norm();
  rec.pct_change_b = b_norm > 0.0 ? percent_change_b(b_prev, state.b) : 0.0;

  const BinaryMatrix c_prev = state.c;
  double column_sum = 0.0;
  auto accumulate = [&](const ColumnEvent& ev) {
    column_sum += residual_energy(*ev.qubo, *ev.updated);
    if (observer) observer(ev);
  };
  update_c(state, a, cfg, mode, accumulate, iter);
  rec.pct_change_c = percent_change_c(c_prev, state.c);
  rec.column_residual_sum = column_sum;

  state.iteration = iter;
  state.relative_residual = relative_residual(a, state.b, state.c);
  rec.relative_residual = state.relative_residual;
  const Microseconds before =
      state.history.empty() ? 0 : state.history.back().cumulative_qpu_time_us;
  rec.cumulative_qpu_time_us = before + iteration_qpu_time(cfg, mode, a.cols());
  state.history.push_back(rec);

  if (!cfg.checkpoint_path.empty()) save_checkpoint(cfg.checkpoint_path, state, cfg);
}

void resume(FactorizationState& state, const DenseMatrix& a, const DriverConfig& cfg,
            const ColumnObserver& observer) {
  cfg.validate();
  while (state.iteration < cfg.total_iterations) step(state, a, cfg, observer);
}

FactorizationState run(const DenseMatrix& a, const DriverConfig& cfg,
                       const ColumnObserver& observer) {
  FactorizationState state = init_state(a, cfg);
  resume(state, a, cfg, observer);
  return state;
}

}  // namespace nbmf
