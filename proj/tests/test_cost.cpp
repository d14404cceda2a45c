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

#include "doctest.h"
#include "nbmf/calibration.hpp"
#include "nbmf/cost.hpp"
#include "nbmf/error.hpp"
#include "nbmf/rng.hpp"
#include "nbmf/synthetic.hpp"
#include "support.hpp"

using namespace nbmf;

TEST_SUITE("cost") {
  TEST_CASE("default models") {
    const CostModel f = default_forward_cost(), r = default_reverse_cost();
    CHECK(f.per_sample_us() == 164);
    CHECK(r.per_sample_us() == 673);
    CHECK(f.programming_us == 8001);
    CHECK(r.programming_us == 8001);
  }

  TEST_CASE("access time") {
    CHECK(access_time(default_forward_cost(), 1000) == 172001);
    CHECK(access_time(default_reverse_cost(), 240) == 169521);
    CHECK(access_time(default_reverse_cost(), 0) == 8001);
    CHECK(access_time(CostModel{1, 2, 3, 77}, 0) == 77);
    CHECK_THROWS(access_time(default_forward_cost(), -1));
  }

  TEST_CASE("access time is affine in the sample count") {
    const CostModel m{7, 11, 13, 101};
    for (std::int64_t n = 0; n < 50; ++n)
      CHECK(access_time(m, n + 1) - access_time(m, n) == m.per_sample_us());
  }

  TEST_CASE("equal-time reverse counts") {
    CHECK(equal_time_reverse_count(1000) == 244);
    CHECK(equal_time_reverse_count(1000, true) == 240);
    CHECK(equal_time_reverse_count(100) == 24);
    CHECK(equal_time_reverse_count(29) == 7);
    CHECK(std::lround(per_sample_ratio() * 100) == 24);
    CHECK_THROWS(equal_time_reverse_count(0));
  }

  TEST_CASE("equal-time count stays within one reverse sample of the forward budget") {
    const CostModel f = default_forward_cost(), r = default_reverse_cost();
    for (std::int64_t n = 1; n <= 5000; n += 7) {
      const std::int64_t rev = equal_time_reverse_count(n);
      CHECK(std::llabs(access_time(r, rev) - access_time(f, n)) <= r.per_sample_us());
    }
  }

  TEST_CASE("model validation") {
    CHECK_THROWS_AS((CostModel{-1, 0, 0, 0}).validate(), ConfigError);
    CHECK_NOTHROW(default_reverse_cost().validate());
  }
}

namespace {

std::vector<CorpusEntry> random_corpus(int count, Eigen::Index k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> corpus;
  for (int i = 0; i < count; ++i)
    corpus.push_back({"q" + std::to_string(i), test::random_column_qubo(10, k, rng),
                      test::random_bits(k, rng)});
  return corpus;
}

}  // namespace

TEST_SUITE("calibration") {
  TEST_CASE("r = 0 row is all same") {
    SamplerConfig cfg;
    cfg.num_samples = 20;
    const auto report = calibrate(random_corpus(5, 6, 1), {0.0}, {10.0}, cfg);
    REQUIRE(report.points.size() == 1);
    CHECK(report.points[0].mean_same == 1.0);
    CHECK(report.points[0].mean_better == 0.0);
    CHECK(report.points[0].sd_same == 0.0);
  }

  TEST_CASE("ground-state corpus never improves") {
    auto corpus = random_corpus(6, 7, 2);
    for (auto& e : corpus) e.initial = exact_solve(e.qubo).state;
    SamplerConfig cfg;
    cfg.num_samples = 50;
    const auto report = calibrate(corpus, {0.1, 0.5, 1.0}, {10.0, 100.0}, cfg);
    for (const auto& p : report.points) CHECK(p.mean_better == 0.0);
  }

  TEST_CASE("report layout, fraction sums and best r") {
    SamplerConfig cfg;
    cfg.num_samples = 40;
    const std::vector<double> rs{0.0, 0.2, 0.6}, ts{10.0, 50.0};
    const auto report = calibrate(random_corpus(8, 8, 3), rs, ts, cfg);
    REQUIRE(report.points.size() == 6);
    for (std::size_t i = 0; i < report.points.size(); ++i) {
      const auto& p = report.points[i];
      CHECK(p.t_r_us == ts[i / 3]);
      CHECK(p.r == rs[i % 3]);
      CHECK(std::abs(p.mean_same + p.mean_better + p.mean_worse - 1.0) <= 1e-9);
      for (double sd : {p.sd_same, p.sd_better, p.sd_worse}) CHECK(sd >= 0.0);
    }
    REQUIRE(report.best_r_per_t_r.size() == 2);
    for (std::size_t t = 0; t < 2; ++t) {
      double best = -1.0, best_r = -1.0;
      for (std::size_t i = 0; i < 3; ++i)
        if (report.points[t * 3 + i].mean_better > best) {
          best = report.points[t * 3 + i].mean_better;
          best_r = rs[i];
        }
      CHECK(report.best_r_per_t_r[t].first == ts[t]);
      CHECK(report.best_r_per_t_r[t].second == best_r);
    }
    const std::string csv = calibration_csv(report);
    CHECK(csv.rfind("t_r_us,r,mean_better,sd_better,mean_same,sd_same,mean_worse,sd_worse\n", 0) ==
          0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
  }

  TEST_CASE("sample standard deviation over entries") {
    // Recompute per-entry fractions with the same streams and compare.
    auto corpus = random_corpus(4, 6, 4);
    SamplerConfig cfg;
    cfg.num_samples = 30;
    cfg.seed = 17;
    const auto report = calibrate(corpus, {0.4}, {10.0}, cfg);
    std::vector<double> better;
    for (std::size_t e = 0; e < corpus.size(); ++e) {
      const std::uint64_t stream = derive_seed(0, {0, e});
      const SampleSet set =
          reverse_sample(corpus[e].qubo, corpus[e].initial, 0.4, 10.0, cfg, stream);
      better.push_back(categorize_samples(corpus[e].qubo, corpus[e].initial, set).better);
    }
    double mean = 0.0;
    for (double b : better) mean += b / better.size();
    double var = 0.0;
    for (double b : better) var += (b - mean) * (b - mean) / (better.size() - 1);
    CHECK(report.points[0].mean_better == doctest::Approx(mean));
    CHECK(report.points[0].sd_better == doctest::Approx(std::sqrt(var)));
  }

  TEST_CASE("mean same-fraction does not increase with r") {
    SamplerConfig cfg;
    cfg.num_samples = 1000;
    const std::vector<double> rs{0.0, 0.1, 0.3, 0.5, 0.7, 1.0};
    const auto report = calibrate(random_corpus(10, 8, 5), rs, {10.0}, cfg);
    for (std::size_t i = 1; i < rs.size(); ++i) {
      INFO("r=" << rs[i - 1] << " -> " << rs[i]);
      CHECK(report.points[i].mean_same <= report.points[i - 1].mean_same);
    }
  }

  TEST_CASE("thread count does not change the report") {
    SamplerConfig cfg;
    cfg.num_samples = 20;
    const auto corpus = random_corpus(6, 6, 6);
    const auto one = calibrate(corpus, {0.2, 0.8}, {10.0}, cfg, 1);
    const auto four = calibrate(corpus, {0.2, 0.8}, {10.0}, cfg, 4);
    CHECK(calibration_csv(one) == calibration_csv(four));
  }

  TEST_CASE("subsample keeps order and size") {
    auto corpus = random_corpus(20, 3, 7);
    const auto picked = subsample(corpus, 5, 9);
    REQUIRE(picked.size() == 5);
    for (std::size_t i = 1; i < picked.size(); ++i)
      CHECK(std::stoi(picked[i - 1].id.substr(1)) < std::stoi(picked[i].id.substr(1)));
    CHECK(subsample(corpus, 50, 9).size() == 20);
  }

  TEST_CASE("post-warm-up harvest") {
    const auto inst = generate_synthetic(12, 10, 3, 0.01, 0.5, 1);
    DriverConfig cfg;
    cfg.rank = 3;
    cfg.total_iterations = 3;
    cfg.forward_samples_per_qubo = 20;
    const auto corpus = harvest_post_warmup_corpus(inst.a, cfg, 4);
    CHECK(corpus.size() == 4);
    for (const auto& e : corpus) {
      CHECK(e.qubo.size() == 3);
      CHECK(e.initial.size() == 3);
    }
    CHECK(harvest_post_warmup_corpus(inst.a, cfg, 0).size() == 10);
    const auto again = harvest_post_warmup_corpus(inst.a, cfg, 4);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      CHECK(again[i].id == corpus[i].id);
      CHECK(again[i].initial == corpus[i].initial);
    }
  }
}
