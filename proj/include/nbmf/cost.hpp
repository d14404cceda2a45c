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

// QPU access-time accounting. All times are integer microseconds.
//
//   access time = (anneal + readout + delay) * samples + programming

#include <cstdint>

namespace nbmf {

using Microseconds = std::int64_t;

struct CostModel {
  Microseconds anneal_us = 0;
  Microseconds readout_us = 0;
  Microseconds delay_us = 0;
  Microseconds programming_us = 0;

  Microseconds per_sample_us() const { return anneal_us + readout_us + delay_us; }
  void validate() const;

  bool operator==(const CostModel&) const = default;
};

/// D-Wave 2000Q forward anneal: 20 us anneal, 123 us readout, 21 us delay, 8001 us programming.
CostModel default_forward_cost();
/// Reverse anneal: 30 us anneal, 123 us readout, 520 us delay (state preparation), 8001 us programming.
CostModel default_reverse_cost();

Microseconds access_time(const CostModel& model, std::int64_t num_samples);

/// Number of reverse samples costing the same access time as `forward_samples`
/// forward samples, rounded half up. With `rounded_factor` the ratio is the
/// two-decimal 0.24 instead of the exact per-sample time ratio.
std::int64_t equal_time_reverse_count(std::int64_t forward_samples, bool rounded_factor = false,
                                      const CostModel& forward = default_forward_cost(),
                                      const CostModel& reverse = default_reverse_cost());

/// forward per-sample time / reverse per-sample time.
double per_sample_ratio(const CostModel& forward = default_forward_cost(),
                        const CostModel& reverse = default_reverse_cost());

}  // namespace nbmf
