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

#include "nbmf/nnls.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "nbmf/error.hpp"
#include "nbmf/parallel.hpp"

namespace nbmf {

void NnlsConfig::validate() const {
  if (max_iterations < 1) throw ConfigError("nnls: max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw ConfigError("nnls: tolerance must be positive");
  if (!(ridge >= 0.0)) throw ConfigError("nnls: ridge must be nonnegative");
}

namespace {

double largest_eigenvalue(const DenseMatrix& gram) {
  Vector v = Vector::Ones(gram.rows());
  double lambda = 0.0;
  for (int it = 0; it < 50; ++it) {
    Vector w = gram * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    lambda = v.dot(w) / v.squaredNorm();
    v = w / norm;
  }
  return lambda;
}

using RowVector = Eigen::Matrix<double, 1, Eigen::Dynamic>;

double projected_inf_norm(const RowVector& x, const RowVector& grad,
                          const std::vector<bool>& active) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!active[i]) continue;
    const double pg = x[i] > 0.0 ? grad[i] : std::min(grad[i], 0.0);
    m = std::max(m, std::abs(pg));
  }
  return m;
}

}  // namespace

DenseMatrix nnls_gradient(const DenseMatrix& a, const BinaryMatrix& c, const DenseMatrix& x,
                          double ridge) {
  const DenseMatrix cd = c.cast<double>();
  return 2.0 * (x * cd - a) * cd.transpose() + 2.0 * ridge * x;
}

NnlsResult solve_nonnegative(const DenseMatrix& a, const BinaryMatrix& c, const NnlsConfig& cfg,
                             const DenseMatrix* warm_start) {
  cfg.validate();
  detail::require_dims(c.rows() >= 1, "solve_nonnegative: C must have at least one row");
  detail::require_dims(a.cols() == c.cols(), "solve_nonnegative: A is " +
                                                 shape_string(a.rows(), a.cols()) + " but C is " +
                                                 shape_string(c.rows(), c.cols()));
  const Eigen::Index n = a.rows();
  const Eigen::Index k = c.rows();
  if (warm_start)
    detail::require_dims(warm_start->rows() == n && warm_start->cols() == k,
                         "solve_nonnegative: warm start must be " + shape_string(n, k));

  const DenseMatrix cd = c.cast<double>();
  DenseMatrix gram = cd * cd.transpose();
  std::vector<bool> active(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) active[i] = gram(i, i) > 0.0;
  gram.diagonal().array() += cfg.ridge;
  const DenseMatrix act = a * cd.transpose();  // n x k

  const double lipschitz = 2.0 * largest_eigenvalue(gram);
  NnlsResult out;
  out.x = DenseMatrix::Zero(n, k);
  if (!(lipschitz > 0.0)) {
    out.converged = true;
    return out;
  }
  const double step = 1.0 / lipschitz;

  std::vector<int> iterations(static_cast<std::size_t>(n), 0);
  std::vector<double> residual_pg(static_cast<std::size_t>(n), 0.0);

  parallel_for(static_cast<std::size_t>(n), cfg.threads, [&](std::size_t row) {
    const auto r = static_cast<Eigen::Index>(row);
    RowVector x = RowVector::Zero(k);
    if (warm_start) x = warm_start->row(r).cwiseMax(0.0);
    for (Eigen::Index i = 0; i < k; ++i)
      if (!active[i]) x[i] = 0.0;
    const RowVector target = act.row(r);
    auto gradient = [&](const RowVector& v) -> RowVector {
      return 2.0 * (v * gram - target);
    };

    const RowVector start = x;
    auto objective = [&](const RowVector& v) { return v.dot(v * gram) - 2.0 * v.dot(target); };

    RowVector y = x;
    double momentum = 1.0;
    RowVector grad = gradient(x);
    double pg = projected_inf_norm(x, grad, active);
    int it = 0;
    while (pg > cfg.tolerance && it < cfg.max_iterations) {
      ++it;
      const RowVector gy = cfg.accelerated ? gradient(y) : grad;
      const RowVector& base = cfg.accelerated ? y : x;
      RowVector next = (base - step * gy).cwiseMax(0.0);
      for (Eigen::Index i = 0; i < k; ++i)
        if (!active[i]) next[i] = 0.0;

      if (cfg.accelerated) {
        // Restart momentum when it points uphill.
        if (gy.dot(next - x) > 0.0) {
          momentum = 1.0;
          y = x;
          continue;
        }
        const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
        y = next + ((momentum - 1.0) / next_momentum) * (next - x);
        momentum = next_momentum;
      }
      x = std::move(next);
      grad = gradient(x);
      pg = projected_inf_norm(x, grad, active);
    }
    // Momentum steps are not monotone; never return worse than the warm start.
    if (warm_start && objective(start) < objective(x)) {
      x = start;
      pg = projected_inf_norm(x, gradient(x), active);
    }
    out.x.row(r) = x;
    iterations[row] = it;
    residual_pg[row] = pg;
  });

  out.iterations = n ? *std::max_element(iterations.begin(), iterations.end()) : 0;
  out.projected_gradient = n ? *std::max_element(residual_pg.begin(), residual_pg.end()) : 0.0;
  out.converged = out.projected_gradient <= cfg.tolerance;
  return out;
}

}  // namespace nbmf
