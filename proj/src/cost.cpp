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

#include "nbmf/cost.hpp"

#include "nbmf/error.hpp"

namespace nbmf {

void CostModel::validate() const {
  if (anneal_us < 0 || readout_us < 0 || delay_us < 0 || programming_us < 0)
    throw ConfigError("cost model: times must be nonnegative");
}

CostModel default_forward_cost() { return {20, 123, 21, 8001}; }
CostModel default_reverse_cost() { return {30, 123, 520, 8001}; }

Microseconds access_time(const CostModel& model, std::int64_t num_samples) {
  if (num_samples < 0) throw ConfigError("access_time: negative sample count");
  return model.per_sample_us() * num_samples + model.programming_us;
}

std::int64_t equal_time_reverse_count(std::int64_t forward_samples, bool rounded_factor,
                                      const CostModel& forward, const CostModel& reverse) {
  if (forward_samples < 1) throw ConfigError("equal_time_reverse_count: need >= 1 forward sample");
  std::int64_t num, den;
  if (rounded_factor) {
    num = 24;
    den = 100;
  } else {
    num = forward.per_sample_us();
    den = reverse.per_sample_us();
    if (den <= 0) throw ConfigError("equal_time_reverse_count: reverse per-sample time is zero");
  }
  // round(n * num / den), half up, in exact integers.
  return (2 * forward_samples * num + den) / (2 * den);
}

double per_sample_ratio(const CostModel& forward, const CostModel& reverse) {
  return static_cast<double>(forward.per_sample_us()) /
         static_cast<double>(reverse.per_sample_us());
}

}  // namespace nbmf
