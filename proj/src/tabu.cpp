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

#include "nbmf/tabu.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <vector>

#include "nbmf/error.hpp"
#include "nbmf/rng.hpp"

namespace nbmf {

TabuResult tabu_solve(const Qubo& qubo, const BinaryVector& initial, double target_energy,
                      double max_time_us, const TabuConfig& cfg) {
  detail::require_dims(initial.size() == qubo.size(), "tabu_solve: initial state length mismatch");
  if (!(max_time_us > 0.0)) throw ConfigError("tabu_solve: max_time must be positive");

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed_us = [&] {
    return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
  };

  const Eigen::Index k = qubo.size();
  TabuResult out;
  out.best = initial;
  out.energy = energy(qubo, initial);
  if (out.energy <= target_energy) {
    out.time_to_target_us = 0.0;
    return out;
  }
  if (k == 0) return out;

  const std::int64_t tenure = cfg.tenure > 0 ? cfg.tenure : std::max<std::int64_t>(7, k / 4);
  const std::int64_t restart_after =
      cfg.restart_after > 0 ? cfg.restart_after : std::max<std::int64_t>(100, 20 * k);
  Rng rng(cfg.seed);

  const DenseMatrix coupling = qubo.coupling_matrix();
  BinaryVector q = initial;
  Vector field = qubo.linear() + coupling * q.cast<double>();
  double current = out.energy;
  std::vector<std::int64_t> tabu_until(static_cast<std::size_t>(k), 0);
  std::int64_t since_improvement = 0;

  auto flip = [&](Eigen::Index i) {
    current += q[i] ? -field[i] : field[i];
    const double sign = q[i] ? -1.0 : 1.0;
    q[i] ^= 1;
    field += sign * coupling.row(i).transpose();
  };

  // Incremental energies drift, so incumbents are re-scored exactly.
  auto improve_incumbent = [&] {
    if (!(current < out.energy)) return false;
    current = energy(qubo, q);
    if (!(current < out.energy)) return false;
    out.best = q;
    out.energy = current;
    since_improvement = 0;
    if (current <= target_energy) out.time_to_target_us = elapsed_us();
    return true;
  };

  for (std::int64_t iter = 1;; ++iter) {
    out.iterations = iter;
    if (elapsed_us() >= max_time_us) break;

    Eigen::Index chosen = -1;
    double chosen_delta = std::numeric_limits<double>::infinity();
    Eigen::Index fallback = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
      const double delta = q[i] ? -field[i] : field[i];
      const bool is_tabu = tabu_until[i] >= iter;
      const bool aspirates = current + delta < out.energy;
      if ((!is_tabu || aspirates) && delta < chosen_delta) {
        chosen = i;
        chosen_delta = delta;
      }
      if (tabu_until[i] < tabu_until[fallback]) fallback = i;
    }
    if (chosen < 0) chosen = fallback;  // every move tabu: take the one expiring first
    flip(chosen);
    tabu_until[chosen] = iter + tenure;
    if (improve_incumbent()) {
      if (out.time_to_target_us) break;
      continue;
    }

    if (++since_improvement >= restart_after) {
      for (Eigen::Index i = 0; i < k; ++i)
        if (rng() >> 63) flip(i);
      current = energy(qubo, q);
      std::fill(tabu_until.begin(), tabu_until.end(), 0);
      since_improvement = 0;
      if (improve_incumbent() && out.time_to_target_us) break;
    }
  }
  return out;
}

}  // namespace nbmf
