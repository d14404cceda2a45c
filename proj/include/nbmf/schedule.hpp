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

#include <span>
#include <vector>

namespace nbmf {

struct SchedulePoint {
  double time_us;
  double s;  // anneal parameter, 1 = fully annealed

  bool operator==(const SchedulePoint&) const = default;
};

/// Piecewise-linear anneal schedule s(t). Times start at 0 and strictly
/// increase; every s lies in [0, 1].
class AnnealSchedule {
 public:
  explicit AnnealSchedule(std::vector<SchedulePoint> points);

  std::span<const SchedulePoint> points() const { return points_; }
  double duration_us() const { return points_.back().time_us; }

  /// Linear interpolation, clamped to the end points outside [0, duration].
  double s_at(double time_us) const;

 private:
  std::vector<SchedulePoint> points_;
};

/// [(0,1), (10,1-r), (10+t_r,1-r), (20+t_r,1)]
AnnealSchedule reverse_schedule(double reversal_distance, double reversal_time_us);

/// Default forward anneal: s ramps 0 -> 1 over 20 us.
AnnealSchedule forward_schedule();

/// Classical temperature for anneal parameter s: T_hot * (1 - s).
inline double temperature_at(double s, double hot_temperature) {
  return hot_temperature * (1.0 - s);
}

}  // namespace nbmf
