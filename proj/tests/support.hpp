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

// Test-only oracles and fixtures. Nothing here calls into the QUBO
// construction under test; residuals are computed straight from B and a.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nbmf/matrix.hpp"
#include "nbmf/qubo.hpp"

namespace nbmf::test {

inline BinaryVector bits_of(std::uint64_t code, Eigen::Index k) {
  // q_0 is the most significant bit.
  BinaryVector q(k);
  for (Eigen::Index i = 0; i < k; ++i) q[i] = (code >> (k - 1 - i)) & 1u;
  return q;
}

inline double direct_residual(const DenseMatrix& b, const Vector& a, const BinaryVector& q) {
  return (a - b * q.cast<double>()).squaredNorm();
}

struct BruteForce {
  std::vector<std::uint64_t> argmins;  // every code attaining the minimum
  double minimum = std::numeric_limits<double>::infinity();
};

/// Enumerates all 2^k codes of ||a - B q||^2; codes within `tie_tol` of the
/// minimum count as co-minimisers.
inline BruteForce brute_force_residual(const DenseMatrix& b, const Vector& a,
                                       double tie_tol = 1e-9) {
  const Eigen::Index k = b.cols();
  std::vector<double> values(std::size_t{1} << k);
  for (std::uint64_t code = 0; code < values.size(); ++code)
    values[code] = direct_residual(b, a, bits_of(code, k));
  BruteForce out;
  out.minimum = *std::min_element(values.begin(), values.end());
  for (std::uint64_t code = 0; code < values.size(); ++code)
    if (values[code] <= out.minimum + tie_tol * std::max(1.0, out.minimum))
      out.argmins.push_back(code);
  return out;
}

inline std::uint64_t code_of(const BinaryVector& q) {
  std::uint64_t code = 0;
  for (Eigen::Index i = 0; i < q.size(); ++i) code = (code << 1) | q[i];
  return code;
}

inline DenseMatrix random_nonneg(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DenseMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
  return m;
}

inline Vector random_vector(Eigen::Index n, std::mt19937_64& rng, double lo = 0.0,
                            double hi = 2.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

inline BinaryMatrix random_binary(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng,
                                  double density = 0.5) {
  std::bernoulli_distribution bit(density);
  BinaryMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = bit(rng) ? 1 : 0;
  return m;
}

inline BinaryVector random_bits(Eigen::Index k, std::mt19937_64& rng) {
  std::bernoulli_distribution bit(0.5);
  BinaryVector q(k);
  for (Eigen::Index i = 0; i < k; ++i) q[i] = bit(rng) ? 1 : 0;
  return q;
}

/// A column QUBO from random nonnegative B and target.
inline Qubo random_column_qubo(Eigen::Index n, Eigen::Index k, std::mt19937_64& rng) {
  const DenseMatrix b = random_nonneg(n, k, rng);
  const Vector a = random_vector(n, rng, 0.0, static_cast<double>(k) / 2.0);
  return build_column_qubo(b, a);
}

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value
/// Q_KS(sqrt(ne) + 0.12 + 0.11 / sqrt(ne)) * D), ne = n m / (n + m).
inline KsResult ks_two_sample(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size()), m = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
  }
  const double ne = n * m / (n + m);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  double p = 0.0;
  if (lambda < 1e-3) {
    p = 1.0;
  } else {
    for (int t = 1; t <= 200; ++t)
      p += 2.0 * ((t % 2) ? 1.0 : -1.0) * std::exp(-2.0 * t * t * lambda * lambda);
    p = std::clamp(p, 0.0, 1.0);
  }
  return {d, p};
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("nbmf-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace nbmf::test
