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

#include "nbmf/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>

#include "nbmf/error.hpp"

namespace nbmf {

void SamplerConfig::validate() const {
  if (num_samples < 1) throw ConfigError("sampler: num_samples must be >= 1");
  if (sweeps_per_microsecond < 1) throw ConfigError("sampler: sweeps_per_microsecond must be >= 1");
  if (!(hot_temperature_scale > 0.0))
    throw ConfigError("sampler: hot_temperature_scale must be positive");
}

namespace {

// Metropolis single-flip sweeps with local fields h_i = a_i + sum_j W_ij q_j.
// Flipping i changes the energy by (1 - 2 q_i) h_i.
BinaryVector run_schedule(const Qubo& qubo, const DenseMatrix& coupling,
                          const AnnealSchedule& schedule, BinaryVector q,
                          int sweeps_per_microsecond, double hot_temperature, Rng& rng) {
  const Eigen::Index k = qubo.size();
  Vector field = qubo.linear() + coupling * q.cast<double>();

  const double duration = schedule.duration_us();
  const long sweeps = std::max(1L, std::lround(duration * sweeps_per_microsecond));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  for (long sweep = 0; sweep < sweeps; ++sweep) {
    const double t = duration * (static_cast<double>(sweep) + 0.5) / static_cast<double>(sweeps);
    const double temperature = temperature_at(schedule.s_at(t), hot_temperature);
    for (std::size_t n = order.size(); n > 1; --n)
      std::swap(order[n - 1], order[static_cast<std::size_t>(rng() % n)]);
    for (const Eigen::Index i : order) {
      const double delta = q[i] ? -field[i] : field[i];
      bool accept = delta < 0.0;
      if (!accept && temperature > 0.0) accept = uniform01(rng) < std::exp(-delta / temperature);
      if (!accept) continue;
      const double sign = q[i] ? -1.0 : 1.0;
      q[i] ^= 1;
      field += sign * coupling.row(i).transpose();
    }
  }
  return q;
}

BinaryVector random_state(Eigen::Index k, Rng& rng) {
  BinaryVector q(k);
  for (Eigen::Index i = 0; i < k; ++i) q[i] = static_cast<std::uint8_t>(rng() >> 63);
  return q;
}

void select_best(SampleSet& set) {
  for (const auto& s : set.samples) {
    if (set.best_state.size() == 0 || s.energy < set.best_energy) {
      set.best_state = s.state;
      set.best_energy = s.energy;
    }
  }
}

}  // namespace

BinaryVector anneal_run(const Qubo& qubo, const AnnealSchedule& schedule, BinaryVector start,
                        int sweeps_per_microsecond, double hot_temperature, Rng& rng) {
  detail::require_dims(start.size() == qubo.size(), "anneal_run: start state length mismatch");
  return run_schedule(qubo, qubo.coupling_matrix(), schedule, std::move(start),
                      sweeps_per_microsecond, hot_temperature, rng);
}

Sample exact_solve(const Qubo& qubo) {
  const Eigen::Index k = qubo.size();
  if (k > kExactSolveMaxVariables)
    throw ConfigError("exact_solve: k = " + std::to_string(k) + " exceeds enumeration limit " +
                      std::to_string(kExactSolveMaxVariables));
  const DenseMatrix coupling = qubo.coupling_matrix();

  // Gray-code walk over integers whose bit (k-1-i) is variable i. The running
  // energy accumulates rounding, so near-ties are resolved on exact energies.
  BinaryVector q = BinaryVector::Zero(k);
  Vector field = qubo.linear();
  double running = 0.0;
  std::uint64_t code = 0;
  std::uint64_t best_code = 0;
  double best_running = 0.0;
  double best_exact = 0.0;
  const double tie_tol = 1e-9 * (1.0 + qubo.max_abs_coefficient() * static_cast<double>(k));

  auto state_of = [k](std::uint64_t c) {
    BinaryVector s(k);
    for (Eigen::Index i = 0; i < k; ++i) s[i] = static_cast<std::uint8_t>((c >> (k - 1 - i)) & 1u);
    return s;
  };

  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t n = 1; n < total; ++n) {
    const int bit = std::countr_zero(n);
    const Eigen::Index i = k - 1 - bit;
    running += q[i] ? -field[i] : field[i];
    const double sign = q[i] ? -1.0 : 1.0;
    q[i] ^= 1;
    field += sign * coupling.row(i).transpose();
    code ^= std::uint64_t{1} << bit;

    if (running < best_running - tie_tol) {
      best_running = running;
      best_code = code;
      best_exact = energy(qubo, q);
    } else if (running <= best_running + tie_tol) {
      const double exact = energy(qubo, q);
      if (exact < best_exact || (exact == best_exact && code < best_code)) {
        best_running = running;
        best_code = code;
        best_exact = exact;
      }
    }
  }
  Sample out{state_of(best_code), 0.0};
  out.energy = energy(qubo, out.state);
  return out;
}

SampleSet forward_sample(const Qubo& qubo, const SamplerConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  const DenseMatrix coupling = qubo.coupling_matrix();
  const AnnealSchedule schedule = forward_schedule();
  const double hot = cfg.hot_temperature_scale * qubo.max_abs_coefficient();

  SampleSet set;
  set.samples.reserve(cfg.num_samples);
  for (int n = 0; n < cfg.num_samples; ++n) {
    Rng rng(derive_seed(cfg.seed, {stream, static_cast<std::uint64_t>(n)}));
    BinaryVector start = random_state(qubo.size(), rng);
    BinaryVector end = run_schedule(qubo, coupling, schedule, std::move(start),
                                    cfg.sweeps_per_microsecond, hot, rng);
    const double e = energy(qubo, end);
    set.samples.push_back({std::move(end), e});
  }
  select_best(set);
  return set;
}

SampleSet reverse_sample(const Qubo& qubo, const BinaryVector& initial, double r, double t_r_us,
                         const SamplerConfig& cfg, std::uint64_t stream) {
  cfg.validate();
  detail::require_dims(initial.size() == qubo.size(),
                       "reverse_sample: initial state length " + std::to_string(initial.size()) +
                           " != " + std::to_string(qubo.size()));
  if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("reverse_sample: r must lie in [0, 1]");
  const double initial_energy = energy(qubo, initial);

  SampleSet set;
  set.samples.reserve(cfg.num_samples);
  if (r == 0.0) {
    for (int n = 0; n < cfg.num_samples; ++n) set.samples.push_back({initial, initial_energy});
  } else {
    const DenseMatrix coupling = qubo.coupling_matrix();
    const AnnealSchedule schedule = reverse_schedule(r, t_r_us);
    const double hot = cfg.hot_temperature_scale * qubo.max_abs_coefficient();
    for (int n = 0; n < cfg.num_samples; ++n) {
      Rng rng(derive_seed(cfg.seed, {stream, static_cast<std::uint64_t>(n)}));
      BinaryVector end =
          run_schedule(qubo, coupling, schedule, initial, cfg.sweeps_per_microsecond, hot, rng);
      const double e = energy(qubo, end);
      set.samples.push_back({std::move(end), e});
    }
  }
  set.best_state = initial;
  set.best_energy = initial_energy;
  for (const auto& s : set.samples) {
    if (s.energy < set.best_energy) {
      set.best_state = s.state;
      set.best_energy = s.energy;
    }
  }
  return set;
}

SampleCategories categorize_samples(const Qubo& qubo, const BinaryVector& initial,
                                    const SampleSet& set) {
  SampleCategories out;
  if (set.samples.empty()) return out;
  const double e0 = energy(qubo, initial);
  std::size_t same = 0, better = 0, worse = 0;
  for (const auto& s : set.samples) {
    if (s.state == initial || s.energy == e0)
      ++same;
    else if (s.energy < e0)
      ++better;
    else
      ++worse;
  }
  const double n = static_cast<double>(set.samples.size());
  out.same = static_cast<double>(same) / n;
  out.better = static_cast<double>(better) / n;
  out.worse = static_cast<double>(worse) / n;
  return out;
}

}  // namespace nbmf
