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

#include "nbmf/matrix.hpp"

namespace nbmf {

struct NnlsConfig {
  int max_iterations = 5000;
  /// Stop once the projected gradient's infinity norm falls below this.
  double tolerance = 1e-8;
  double ridge = 0.0;
  /// Nesterov momentum with gradient-based restart; plain projected gradient otherwise.
  bool accelerated = true;
  unsigned threads = 1;

  void validate() const;
};

struct NnlsResult {
  DenseMatrix x;
  bool converged = false;
  /// Largest per-row iteration count.
  int iterations = 0;
  /// Largest projected-gradient infinity norm over all rows at exit.
  double projected_gradient = 0.0;
};

/// Nonnegative X minimising ||A - X C||_F^2 + ridge ||X||_F^2.
///
/// Rows of X decouple and share the Gram matrix C C^T, so each row is solved
/// by projected gradient with step 1/L, L = 2 lambda_max(C C^T) + 2 ridge.
/// Components belonging to all-zero rows of C are pinned at 0.
/// `warm_start`, when given, must be n x k and seeds the iteration.
NnlsResult solve_nonnegative(const DenseMatrix& a, const BinaryMatrix& c, const NnlsConfig& cfg,
                             const DenseMatrix* warm_start = nullptr);

/// 2 (X C - A) C^T + 2 ridge X
DenseMatrix nnls_gradient(const DenseMatrix& a, const BinaryMatrix& c, const DenseMatrix& x,
                          double ridge);

}  // namespace nbmf
