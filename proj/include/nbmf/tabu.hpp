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

#include <cstdint>
#include <optional>

#include "nbmf/matrix.hpp"
#include "nbmf/qubo.hpp"

namespace nbmf {

struct TabuConfig {
  /// 0 selects the default tenure max(7, k/4).
  int tenure = 0;
  /// Non-improving moves tolerated before a random restart; 0 selects max(100, 20k).
  int restart_after = 0;
  std::uint64_t seed = 0;
};

struct TabuResult {
  BinaryVector best;
  double energy = 0.0;
  /// Wall-clock microseconds until the incumbent first reached the target;
  /// empty when the target was not reached within the time limit.
  std::optional<double> time_to_target_us;
  std::int64_t iterations = 0;
};

/// Single-flip tabu search warm-started at `initial`. Stops as soon as the
/// incumbent energy is <= target_energy, or after max_time_us of wall clock.
TabuResult tabu_solve(const Qubo& qubo, const BinaryVector& initial, double target_energy,
                      double max_time_us, const TabuConfig& cfg = {});

}  // namespace nbmf
