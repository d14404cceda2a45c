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

// Per-column binary least squares as a QUBO:
//
//   ||a - B q||^2 = offset + sum_j a_j q_j + sum_{j<k} b_jk q_j q_k
//
// with a_j = sum_l B_lj (B_lj - 2 a_l), b_jk = 2 sum_l B_lj B_lk and
// offset = ||a||^2.

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

#include "nbmf/matrix.hpp"

namespace nbmf {

template <typename Scalar>
class BasicQubo {
 public:
  using Vec = DenseVectorT<Scalar>;

  BasicQubo() = default;

  /// `quadratic` is packed strictly-upper-triangular, row by row:
  /// (0,1), (0,2), ..., (0,k-1), (1,2), ...
  BasicQubo(Vec linear, Vec quadratic, Scalar offset)
      : linear_(std::move(linear)), quadratic_(std::move(quadratic)), offset_(offset) {
    const Eigen::Index k = linear_.size();
    detail::require_dims(quadratic_.size() == k * (k - 1) / 2,
                         "Qubo: quadratic must hold k(k-1)/2 coefficients");
    if (offset_ < Scalar(0)) throw DataError("Qubo: offset must be nonnegative");
  }

  Eigen::Index size() const { return linear_.size(); }
  const Vec& linear() const { return linear_; }
  const Vec& quadratic() const { return quadratic_; }
  Scalar offset() const { return offset_; }

  static Eigen::Index packed_index(Eigen::Index i, Eigen::Index j, Eigen::Index k) {
    // Requires i < j.
    return i * (2 * k - i - 1) / 2 + (j - i - 1);
  }

  /// b_ij for i != j (order-insensitive).
  Scalar coupling(Eigen::Index i, Eigen::Index j) const {
    if (i > j) std::swap(i, j);
    return quadratic_[packed_index(i, j, size())];
  }

  /// Symmetric k x k matrix with zero diagonal, W(i,j) = b_ij.
  DenseMatrixT<Scalar> coupling_matrix() const {
    const Eigen::Index k = size();
    DenseMatrixT<Scalar> w = DenseMatrixT<Scalar>::Zero(k, k);
    Eigen::Index p = 0;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i + 1; j < k; ++j, ++p) w(i, j) = w(j, i) = quadratic_[p];
    return w;
  }

  /// Largest coefficient magnitude over linear and quadratic terms.
  Scalar max_abs_coefficient() const {
    Scalar m = linear_.size() ? linear_.cwiseAbs().maxCoeff() : Scalar(0);
    if (quadratic_.size()) m = std::max(m, quadratic_.cwiseAbs().maxCoeff());
    return m;
  }

 private:
  Vec linear_;
  Vec quadratic_;
  Scalar offset_ = Scalar(0);
};

using Qubo = BasicQubo<double>;

template <typename DB, typename DA>
BasicQubo<typename DB::Scalar> build_column_qubo(const Eigen::MatrixBase<DB>& b,
                                                 const Eigen::MatrixBase<DA>& a_col) {
  using Scalar = typename DB::Scalar;
  detail::require_dims(a_col.size() == b.rows(),
                       "build_column_qubo: column length " + std::to_string(a_col.size()) +
                           " does not match B rows " + std::to_string(b.rows()));
  const Eigen::Index k = b.cols();
  const DenseMatrixT<Scalar> gram = b.transpose() * b;
  const DenseVectorT<Scalar> bta = b.transpose() * a_col;

  DenseVectorT<Scalar> linear = gram.diagonal() - Scalar(2) * bta;
  DenseVectorT<Scalar> quadratic(k * (k - 1) / 2);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j) quadratic[p++] = Scalar(2) * gram(i, j);
  return BasicQubo<Scalar>(std::move(linear), std::move(quadratic), a_col.squaredNorm());
}

/// f(q), excluding the constant offset.
template <typename Scalar, typename DQ>
Scalar energy(const BasicQubo<Scalar>& qubo, const Eigen::MatrixBase<DQ>& q) {
  const Eigen::Index k = qubo.size();
  detail::require_dims(q.size() == k, "energy: state length " + std::to_string(q.size()) +
                                          " != " + std::to_string(k));
  Scalar e(0);
  Eigen::Index p = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (!q[i]) {
      p += k - i - 1;
      continue;
    }
    e += qubo.linear()[i];
    for (Eigen::Index j = i + 1; j < k; ++j, ++p)
      if (q[j]) e += qubo.quadratic()[p];
  }
  return e;
}

/// energy + offset = ||a_col - B q||^2.
template <typename Scalar, typename DQ>
Scalar residual_energy(const BasicQubo<Scalar>& qubo, const Eigen::MatrixBase<DQ>& q) {
  return energy(qubo, q) + qubo.offset();
}

}  // namespace nbmf
