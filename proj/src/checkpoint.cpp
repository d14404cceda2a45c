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

#include "nbmf/checkpoint.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nbmf/error.hpp"

namespace nbmf {

using nlohmann::json;

namespace {

std::string fmt_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename Derived>
json matrix_json(const Eigen::MatrixBase<Derived>& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

template <typename Matrix>
Matrix matrix_from_json(const json& j, const char* what) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const auto& data = j.at("data");
  if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw DataError(std::string("checkpoint: ") + what + " data length does not match dims");
  Matrix m(rows, cols);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = data[p++].get<typename Matrix::Scalar>();
  return m;
}

UpdateMode mode_from_string(const std::string& s) {
  if (s == "forward") return UpdateMode::forward;
  if (s == "reverse") return UpdateMode::reverse;
  if (s == "exact") return UpdateMode::exact;
  throw DataError("checkpoint: unknown update mode '" + s + "'");
}

json cost_json(const CostModel& c) {
  return {{"anneal_us", c.anneal_us},
          {"readout_us", c.readout_us},
          {"delay_us", c.delay_us},
          {"programming_us", c.programming_us}};
}

}  // namespace

json to_json(const DriverConfig& cfg) {
  return {
      {"rank", cfg.rank},
      {"total_iterations", cfg.total_iterations},
      {"forward_warmup_iterations", cfg.forward_warmup_iterations},
      {"reversal_distance", cfg.reversal_distance},
      {"reversal_time_us", cfg.reversal_time_us},
      {"forward_samples_per_qubo", cfg.forward_samples_per_qubo},
      {"reverse_samples_per_qubo", cfg.reverse_samples_per_qubo},
      {"sweeps_per_microsecond", cfg.sampler.sweeps_per_microsecond},
      {"hot_temperature_scale", cfg.sampler.hot_temperature_scale},
      {"nnls",
       {{"max_iterations", cfg.nnls.max_iterations},
        {"tolerance", cfg.nnls.tolerance},
        {"ridge", cfg.nnls.ridge},
        {"accelerated", cfg.nnls.accelerated}}},
      {"master_seed", cfg.master_seed},
      {"init_density", cfg.init_density},
      {"forward_cost", cost_json(cfg.forward_cost)},
      {"reverse_cost", cost_json(cfg.reverse_cost)},
  };
}

json to_json(const IterationRecord& rec) {
  return {{"iteration", rec.iteration},
          {"mode", to_string(rec.mode)},
          {"relative_residual", rec.relative_residual},
          {"pct_change_b", rec.pct_change_b},
          {"pct_change_c", rec.pct_change_c},
          {"cumulative_qpu_time_us", rec.cumulative_qpu_time_us},
          {"column_residual_sum", rec.column_residual_sum},
          {"nnls_converged", rec.nnls_converged}};
}

json to_json(const Qubo& qubo) {
  return {{"k", qubo.size()},
          {"linear", std::vector<double>(qubo.linear().begin(), qubo.linear().end())},
          {"quadratic", std::vector<double>(qubo.quadratic().begin(), qubo.quadratic().end())},
          {"offset", qubo.offset()}};
}

json checkpoint_json(const FactorizationState& state, const DriverConfig& cfg) {
  json history = json::array();
  for (const auto& rec : state.history) history.push_back(to_json(rec));
  return {{"iteration", state.iteration},
          {"k", state.b.cols()},
          {"relative_residual", state.relative_residual},
          {"B", matrix_json(state.b)},
          {"C", matrix_json(state.c)},
          {"history", std::move(history)},
          {"config", to_json(cfg)},
          {"master_seed", cfg.master_seed}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw DataError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void save_checkpoint(const std::filesystem::path& path, const FactorizationState& state,
                     const DriverConfig& cfg) {
  write_file_atomic(path, checkpoint_json(state, cfg).dump(1) + "\n");
}

FactorizationState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw DataError("checkpoint " + path.string() + ": " + e.what());
  }
  FactorizationState state;
  try {
    state.iteration = j.at("iteration").get<int>();
    state.relative_residual = j.at("relative_residual").get<double>();
    state.b = matrix_from_json<DenseMatrix>(j.at("B"), "B");
    state.c = matrix_from_json<BinaryMatrix>(j.at("C"), "C");
    for (const auto& h : j.at("history")) {
      IterationRecord rec;
      rec.iteration = h.at("iteration").get<int>();
      rec.mode = mode_from_string(h.at("mode").get<std::string>());
      rec.relative_residual = h.at("relative_residual").get<double>();
      rec.pct_change_b = h.at("pct_change_b").get<double>();
      rec.pct_change_c = h.at("pct_change_c").get<double>();
      rec.cumulative_qpu_time_us = h.at("cumulative_qpu_time_us").get<Microseconds>();
      rec.column_residual_sum = h.value("column_residual_sum", 0.0);
      rec.nnls_converged = h.value("nnls_converged", true);
      state.history.push_back(rec);
    }
  } catch (const json::exception& e) {
    throw DataError("checkpoint " + path.string() + ": " + e.what());
  }
  if (!is_binary(state.c)) throw DataError("checkpoint: C is not binary");
  if (state.b.cols() != state.c.rows())
    throw DataError("checkpoint: B and C ranks disagree");
  if (static_cast<int>(state.history.size()) != state.iteration)
    throw DataError("checkpoint: history length does not match iteration");
  return state;
}

std::string history_csv(const FactorizationState& state) {
  std::ostringstream out;
  out << "iteration,relative_residual,pct_change_b,pct_change_c,cumulative_qpu_time_us\n";
  for (const auto& r : state.history)
    out << r.iteration << ',' << fmt_real(r.relative_residual) << ','
        << fmt_real(r.pct_change_b) << ',' << fmt_real(r.pct_change_c) << ','
        << r.cumulative_qpu_time_us << '\n';
  return out.str();
}

}  // namespace nbmf
