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

// Classical stand-ins for a quantum annealer. The anneal parameter s of a
// schedule is mapped to a Metropolis temperature T(s) = T_hot * (1 - s) with
// T_hot = hot_temperature_scale * max |coefficient|, so s = 1 is greedy
// descent and s = 0 is the hottest point.

#include <cstdint>
#include <vector>

#include "nbmf/matrix.hpp"
#include "nbmf/qubo.hpp"
#include "nbmf/rng.hpp"
#include "nbmf/schedule.hpp"

namespace nbmf {

struct SamplerConfig {
  int num_samples = 100;
  int sweeps_per_microsecond = 10;
  std::uint64_t seed = 0;
  double hot_temperature_scale = 1.0;

  void validate() const;
};

struct Sample {
  BinaryVector state;
  double energy = 0.0;
};

struct SampleSet {
  std::vector<Sample> samples;
  BinaryVector best_state;
  double best_energy = 0.0;
};

/// Brute force over all 2^k states. Ties go to the smallest state read as a
/// big-endian integer (q_0 is the most significant bit).
Sample exact_solve(const Qubo& qubo);
inline constexpr int kExactSolveMaxVariables = 25;

/// One Metropolis single-flip run along `schedule` starting from `start`.
/// Each sweep visits the variables in a fresh random order with s read at the
/// sweep's temporal midpoint.
BinaryVector anneal_run(const Qubo& qubo, const AnnealSchedule& schedule, BinaryVector start,
                        int sweeps_per_microsecond, double hot_temperature, Rng& rng);

/// Independent forward anneals from uniformly random states.
/// `stream` selects an independent RNG stream under cfg.seed.
SampleSet forward_sample(const Qubo& qubo, const SamplerConfig& cfg, std::uint64_t stream = 0);

/// Reverse anneals from `initial` with reversal distance r and reversal time
/// t_r. r = 0 returns `initial` for every sample. The best state is chosen
/// over the samples and `initial`; `initial` is kept unless a sample is
/// strictly lower.
SampleSet reverse_sample(const Qubo& qubo, const BinaryVector& initial, double r,
                         double t_r_us, const SamplerConfig& cfg, std::uint64_t stream = 0);

struct SampleCategories {
  double same = 0.0;
  double better = 0.0;
  double worse = 0.0;
};

/// Fractions of samples equal to / lower than / higher than the initial state.
/// A different state with exactly the initial energy counts as "same".
SampleCategories categorize_samples(const Qubo& qubo, const BinaryVector& initial,
                                    const SampleSet& set);

}  // namespace nbmf
