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

// Dense real and binary matrix types plus the norms and iteration-change
// metrics used to track a factorization A ~= B C.

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <string>

#include "nbmf/error.hpp"

namespace nbmf {

template <typename Scalar>
using DenseMatrixT =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename Scalar>
using DenseVectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using DenseMatrix = DenseMatrixT<double>;
using Vector = DenseVectorT<double>;

/// Entries are 0 or 1. Stored as bytes so that products with a DenseMatrix
/// go through an explicit cast.
using BinaryMatrix =
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using BinaryVector = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, 1>;

inline std::string shape_string(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

template <typename Derived>
bool is_binary(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && m(i, j) != 1) return false;
  return true;
}

template <typename Derived>
typename Derived::Scalar frobenius_norm(const Eigen::MatrixBase<Derived>& m) {
  return m.norm();
}

/// ||A - B C||_F / ||A||_F.
template <typename DA, typename DB, typename DC>
typename DA::Scalar relative_residual(const Eigen::MatrixBase<DA>& a,
                                      const Eigen::MatrixBase<DB>& b,
                                      const Eigen::MatrixBase<DC>& c) {
  using Scalar = typename DA::Scalar;
  detail::require_dims(b.rows() == a.rows() && c.rows() == b.cols() &&
                           c.cols() == a.cols(),
                       "relative_residual: A " + shape_string(a.rows(), a.cols()) +
                           ", B " + shape_string(b.rows(), b.cols()) + ", C " +
                           shape_string(c.rows(), c.cols()));
  const Scalar denom = a.norm();
  if (!(denom > Scalar(0)))
    throw DataError("relative_residual: A is identically zero");
  return (a - b * c.template cast<Scalar>()).norm() / denom;
}

/// ||B_next - B_prev||_F / ||B_prev||_F
template <typename D1, typename D2>
typename D1::Scalar percent_change_b(const Eigen::MatrixBase<D1>& prev,
                                     const Eigen::MatrixBase<D2>& next) {
  using Scalar = typename D1::Scalar;
  detail::require_dims(prev.rows() == next.rows() && prev.cols() == next.cols(),
                       "percent_change_b: shape mismatch");
  const Scalar denom = prev.norm();
  if (!(denom > Scalar(0))) throw DataError("percent_change_b: B_prev has zero norm");
  return (next - prev).norm() / denom;
}

template <typename D1, typename D2>
Eigen::Index hamming_distance(const Eigen::MatrixBase<D1>& x,
                              const Eigen::MatrixBase<D2>& y) {
  detail::require_dims(x.rows() == y.rows() && x.cols() == y.cols(),
                       "hamming_distance: shape mismatch");
  return (x.array() != y.array()).count();
}

/// Fraction of entries that differ.
template <typename D1, typename D2>
double percent_change_c(const Eigen::MatrixBase<D1>& prev,
                        const Eigen::MatrixBase<D2>& next) {
  const auto diff = hamming_distance(prev, next);
  return static_cast<double>(diff) / static_cast<double>(prev.size());
}

}  // namespace nbmf
