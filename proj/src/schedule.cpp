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

#include "nbmf/schedule.hpp"

#include <algorithm>
#include <string>

#include "nbmf/error.hpp"

namespace nbmf {

AnnealSchedule::AnnealSchedule(std::vector<SchedulePoint> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw ConfigError("anneal schedule needs at least 2 points");
  if (points_.front().time_us != 0.0) throw ConfigError("anneal schedule must start at t=0");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (!(p.s >= 0.0 && p.s <= 1.0))
      throw ConfigError("anneal schedule point " + std::to_string(i) + " has s outside [0,1]");
    if (i > 0 && !(p.time_us > points_[i - 1].time_us))
      throw ConfigError("anneal schedule times must strictly increase");
  }
}

double AnnealSchedule::s_at(double t) const {
  if (t <= 0.0) return points_.front().s;
  if (t >= duration_us()) return points_.back().s;
  auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double v, const SchedulePoint& p) { return v < p.time_us; });
  auto lo = hi - 1;
  const double w = (t - lo->time_us) / (hi->time_us - lo->time_us);
  return lo->s + w * (hi->s - lo->s);
}

AnnealSchedule reverse_schedule(double r, double t_r) {
  if (!(r > 0.0 && r <= 1.0)) throw ConfigError("reversal distance must lie in (0, 1]");
  if (!(t_r > 0.0)) throw ConfigError("reversal time must be positive");
  return AnnealSchedule({{0.0, 1.0}, {10.0, 1.0 - r}, {10.0 + t_r, 1.0 - r}, {20.0 + t_r, 1.0}});
}

AnnealSchedule forward_schedule() { return AnnealSchedule({{0.0, 0.0}, {20.0, 1.0}}); }

}  // namespace nbmf
