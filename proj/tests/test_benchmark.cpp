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
#include "nbmf/benchmark.hpp"
#include "nbmf/error.hpp"
#include "support.hpp"

using namespace nbmf;

namespace {

std::vector<CorpusEntry> corpus_of(int count, Eigen::Index k, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CorpusEntry> out;
  for (int i = 0; i < count; ++i)
    out.push_back({"q" + std::to_string(i), test::random_column_qubo(10, k, rng),
                   test::random_bits(k, rng)});
  return out;
}

BenchmarkConfig quick_config(int samples) {
  BenchmarkConfig cfg;
  cfg.sampler.num_samples = samples;
  cfg.max_time_us = 2e6;
  return cfg;
}

/// Always claims success and returns a fixed state.
class LyingCompetitor : public Competitor {
 public:
  explicit LyingCompetitor(BinaryVector state) : state_(std::move(state)) {}
  std::string name() const override { return "liar"; }
  CompetitorResult solve(const Qubo& q, const BinaryVector&, double, double) override {
    ++calls;
    return {state_, energy(q, state_), 1.0};
  }
  int calls = 0;

 private:
  BinaryVector state_;
};

}  // namespace

TEST_SUITE("benchmark") {
  TEST_CASE("non-improved entries get time zero and are excluded without a competitor call") {
    auto corpus = corpus_of(5, 6, 1);
    for (auto& e : corpus) e.initial = exact_solve(e.qubo).state;
    LyingCompetitor liar(BinaryVector::Zero(6));
    const BenchmarkResult r = run_benchmark(corpus, quick_config(20), liar);
    CHECK(liar.calls == 0);
    for (const auto& rec : r.records) {
      CHECK_FALSE(rec.improved);
      CHECK(rec.excluded_from_plot);
      REQUIRE(rec.reached());
      CHECK(*rec.time_to_target_us == 0.0);
    }
  }

  TEST_CASE("reached records hold a classical energy at or below target") {
    const auto corpus = corpus_of(25, 10, 2);
    TabuCompetitor tabu;
    const BenchmarkResult r = run_benchmark(corpus, quick_config(30), tabu);
    int improved = 0;
    for (std::size_t i = 0; i < r.records.size(); ++i) {
      const auto& rec = r.records[i];
      CHECK(rec.reverse_best_energy <= rec.initial_energy);
      CHECK(rec.reverse_best_energy >= exact_solve(corpus[i].qubo).energy - 1e-12);
      if (rec.improved) {
        ++improved;
        CHECK_FALSE(rec.excluded_from_plot);
      }
      if (rec.reached()) CHECK(rec.classical_energy <= rec.reverse_best_energy + 1e-12);
    }
    CHECK(improved > 0);
  }

  TEST_CASE("summary totals equal the sum over records") {
    const auto corpus = corpus_of(12, 8, 3);
    TabuCompetitor tabu;
    const BenchmarkConfig cfg = quick_config(24);
    const BenchmarkResult r = run_benchmark(corpus, cfg, tabu);
    const auto& s = r.summary;
    std::size_t improved = 0, reached = 0;
    double ttt = 0.0;
    Microseconds qpu = 0;
    for (const auto& rec : r.records) {
      improved += rec.improved;
      reached += rec.reached();
      if (rec.reached()) ttt += *rec.time_to_target_us;
      qpu += rec.simulated_qpu_time_us;
      CHECK(rec.simulated_qpu_time_us == access_time(default_reverse_cost(), 24));
    }
    CHECK(s.qubos == 12);
    CHECK(s.improved == improved);
    CHECK(s.reached == reached);
    CHECK(s.not_reached == 12 - reached);
    CHECK(s.total_time_to_target_us == ttt);
    CHECK(s.total_qpu_access_time_us == qpu);
    CHECK(s.total_annealing_time_us == 12 * 24 * default_reverse_cost().anneal_us);

    const std::string csv = benchmark_csv(r);
    CHECK(csv.rfind("qubo_id,initial_energy,reverse_best_energy,simulated_qpu_time_us,"
                    "time_to_target_us,reached,excluded_from_plot\n",
                    0) == 0);
    const auto j = summary_json(s);
    CHECK(j["qubos"] == 12);
    CHECK(j["total_qpu_access_time_us"] == qpu);
  }

  TEST_CASE("timeouts are recorded as not reached") {
    const auto corpus = corpus_of(6, 12, 4);
    class Slow : public Competitor {
     public:
      std::string name() const override { return "slow"; }
      CompetitorResult solve(const Qubo&, const BinaryVector& init, double, double) override {
        return {init, 0.0, std::nullopt};
      }
    } slow;
    const BenchmarkResult r = run_benchmark(corpus, quick_config(30), slow);
    for (const auto& rec : r.records)
      CHECK(rec.reached() == !rec.improved);
    CHECK((benchmark_csv(r).find("not_reached") != std::string::npos) ==
          (r.summary.improved > 0));
  }

  TEST_CASE("external competitor: answers are re-scored") {
    test::TempDir dir("ext");
    // Q over 3 variables with ground state (1,1,1) at energy -3.
    Vector lin = Vector::Constant(3, -1.0);
    const Qubo q(lin, Vector::Zero(3), 3.0);
    const auto write_script = [&](const std::string& name, const std::string& body) {
      const auto path = dir / name;
      std::ofstream(path) << "#!/bin/sh\n" << body << "\n";
      std::filesystem::permissions(path, std::filesystem::perms::owner_all);
      return path.string();
    };
    const std::string honest = write_script(
        "honest.sh", "test -s \"$1\" || exit 1\n"
                     "echo '{\"state\":[1,1,1],\"energy\":-3,\"time_to_target_us\":12.5}' > \"$2\"");
    const std::string liar = write_script(
        "liar.sh", "echo '{\"state\":[0,0,0],\"energy\":-99,\"time_to_target_us\":1}' > \"$2\"");
    const std::string broken = write_script("broken.sh", "exit 3");

    ExternalCompetitor ok(honest, (dir / "work").string());
    const CompetitorResult a = ok.solve(q, BinaryVector::Zero(3), -2.0, 1e6);
    CHECK(a.energy == -3.0);
    REQUIRE(a.time_to_target_us.has_value());
    CHECK(*a.time_to_target_us == 12.5);
    const auto req = nlohmann::json::parse(std::ifstream(dir / "work" / "competitor_0_request.json"));
    CHECK(req["k"] == 3);
    CHECK(req["target_energy"] == -2.0);
    CHECK(req["initial"].size() == 3);

    ExternalCompetitor lies(liar, (dir / "work").string());
    const CompetitorResult b = lies.solve(q, BinaryVector::Zero(3), -2.0, 1e6);
    CHECK(b.energy == 0.0);
    CHECK_FALSE(b.time_to_target_us.has_value());

    ExternalCompetitor fails(broken, (dir / "work").string());
    CHECK_THROWS_AS(fails.solve(q, BinaryVector::Zero(3), -2.0, 1e6), DataError);
  }

  TEST_CASE("argument checks") {
    TabuCompetitor tabu;
    CHECK_THROWS_AS(run_benchmark({}, quick_config(10), tabu), ConfigError);
    BenchmarkConfig bad = quick_config(10);
    bad.max_time_us = 0;
    CHECK_THROWS_AS(run_benchmark(corpus_of(1, 3, 5), bad, tabu), ConfigError);
  }
}
