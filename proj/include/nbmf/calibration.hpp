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

// Reverse-anneal calibration: for every (t_r, r) grid point, reverse-sample
// each corpus QUBO from its initial state and tally how often samples come
// back the same as, better than, or worse than that state.

#include <cstdint>
#include <string>
#include <vector>

#include "nbmf/driver.hpp"
#include "nbmf/qubo.hpp"
#include "nbmf/sampler.hpp"

namespace nbmf {

struct CorpusEntry {
  std::string id;
  Qubo qubo;
  BinaryVector initial;
};

struct CalibrationPoint {
  double t_r_us = 0.0;
  double r = 0.0;
  double mean_better = 0.0, sd_better = 0.0;
  double mean_same = 0.0, sd_same = 0.0;
  double mean_worse = 0.0, sd_worse = 0.0;
};

struct CalibrationReport {
  /// Ordered by t_r grid, then r grid.
  std::vector<CalibrationPoint> points;
  /// Per t_r grid entry: the r with the highest mean better-fraction
  /// (first in grid order on ties).
  std::vector<std::pair<double, double>> best_r_per_t_r;
};

/// Standard deviations are sample deviations (n - 1); 0 for a single entry.
CalibrationReport calibrate(const std::vector<CorpusEntry>& corpus,
                            const std::vector<double>& r_grid,
                            const std::vector<double>& t_r_grid, const SamplerConfig& cfg,
                            unsigned threads = 1);

/// t_r_us,r,mean_better,sd_better,mean_same,sd_same,mean_worse,sd_worse
std::string calibration_csv(const CalibrationReport& report);

/// QUBOs met right after the forward warm-up: runs the warm-up iterations,
/// updates B once more, and pairs each column's QUBO with its current C
/// column. Keeps `corpus_size` columns chosen uniformly without replacement
/// (all of them when corpus_size <= 0 or >= m).
std::vector<CorpusEntry> harvest_post_warmup_corpus(const DenseMatrix& a, DriverConfig cfg,
                                                    int corpus_size);

/// Uniform subset of `count` entries, kept in original order.
std::vector<CorpusEntry> subsample(std::vector<CorpusEntry> entries, int count,
                                   std::uint64_t seed);

}  // namespace nbmf
