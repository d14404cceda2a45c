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

#include "nbmf/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "nbmf/error.hpp"
#include "nbmf/parallel.hpp"
#include "nbmf/rng.hpp"

namespace nbmf {

namespace {

std::pair<double, double> mean_sd(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace

CalibrationReport calibrate(const std::vector<CorpusEntry>& corpus,
                            const std::vector<double>& r_grid,
                            const std::vector<double>& t_r_grid, const SamplerConfig& cfg,
                            unsigned threads) {
  if (corpus.empty()) throw ConfigError("calibrate: empty corpus");
  if (r_grid.empty() || t_r_grid.empty()) throw ConfigError("calibrate: empty grid");
  cfg.validate();

  CalibrationReport report;
  const std::size_t n = corpus.size();
  for (std::size_t ti = 0; ti < t_r_grid.size(); ++ti) {
    double best_r = r_grid.front();
    double best_mean = -1.0;
    for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
      std::vector<double> same(n), better(n), worse(n);
      parallel_for(n, threads, [&](std::size_t e) {
        const auto& entry = corpus[e];
        const SampleSet set = reverse_sample(entry.qubo, entry.initial, r_grid[ri], t_r_grid[ti],
                                             cfg, derive_seed(ti, {ri, e}));
        const SampleCategories cat = categorize_samples(entry.qubo, entry.initial, set);
        same[e] = cat.same;
        better[e] = cat.better;
        worse[e] = cat.worse;
      });
      CalibrationPoint p;
      p.t_r_us = t_r_grid[ti];
      p.r = r_grid[ri];
      std::tie(p.mean_better, p.sd_better) = mean_sd(better);
      std::tie(p.mean_same, p.sd_same) = mean_sd(same);
      std::tie(p.mean_worse, p.sd_worse) = mean_sd(worse);
      if (p.mean_better > best_mean) {
        best_mean = p.mean_better;
        best_r = p.r;
      }
      report.points.push_back(p);
    }
    report.best_r_per_t_r.emplace_back(t_r_grid[ti], best_r);
  }
  return report;
}

std::string calibration_csv(const CalibrationReport& report) {
  std::ostringstream out;
  out << "t_r_us,r,mean_better,sd_better,mean_same,sd_same,mean_worse,sd_worse\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& p : report.points)
    out << put(p.t_r_us) << ',' << put(p.r) << ',' << put(p.mean_better) << ','
        << put(p.sd_better) << ',' << put(p.mean_same) << ',' << put(p.sd_same) << ','
        << put(p.mean_worse) << ',' << put(p.sd_worse) << '\n';
  return out.str();
}

std::vector<CorpusEntry> subsample(std::vector<CorpusEntry> entries, int count,
                                   std::uint64_t seed) {
  if (count <= 0 || static_cast<std::size_t>(count) >= entries.size()) return entries;
  std::vector<std::size_t> idx(entries.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(derive_seed(seed, {0x5A3D}));
  // Partial Fisher-Yates over the index list.
  for (std::size_t i = 0; i < static_cast<std::size_t>(count); ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(static_cast<std::size_t>(count));
  std::sort(idx.begin(), idx.end());
  std::vector<CorpusEntry> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(std::move(entries[i]));
  return out;
}

std::vector<CorpusEntry> harvest_post_warmup_corpus(const DenseMatrix& a, DriverConfig cfg,
                                                    int corpus_size) {
  cfg.total_iterations = cfg.forward_warmup_iterations;
  cfg.checkpoint_path.clear();
  FactorizationState state = run(a, cfg);
  update_b(state, a, cfg);

  std::vector<CorpusEntry> corpus;
  corpus.reserve(static_cast<std::size_t>(a.cols()));
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    corpus.push_back({"col" + std::to_string(j), build_column_qubo(state.b, a.col(j)),
                      state.c.col(j)});
  return subsample(std::move(corpus), corpus_size, cfg.master_seed);
}

}  // namespace nbmf
