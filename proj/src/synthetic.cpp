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

#include "nbmf/synthetic.hpp"

#include <random>
#include <string>

#include "nbmf/error.hpp"
#include "nbmf/rng.hpp"

namespace nbmf {

PlantedInstance generate_synthetic(Eigen::Index n, Eigen::Index m, Eigen::Index k,
                                   double noise_sigma, double density, std::uint64_t seed) {
  if (n < 1 || m < 1 || k < 1)
    throw ConfigError("generate_synthetic: n, m, k must be >= 1");
  if (k > std::min(n, m))
    throw ConfigError("generate_synthetic: k = " + std::to_string(k) + " exceeds min(n, m)");
  if (!(density > 0.0 && density < 1.0))
    throw ConfigError("generate_synthetic: density must lie in (0, 1)");
  if (!(noise_sigma >= 0.0)) throw ConfigError("generate_synthetic: noise_sigma must be >= 0");

  Rng rng(derive_seed(seed, {0x5E7}));
  std::normal_distribution<double> normal(0.0, 1.0);

  PlantedInstance out;
  out.b.resize(n, k);
  for (Eigen::Index i = 0; i < out.b.size(); ++i) out.b.data()[i] = std::abs(normal(rng));
  out.c.resize(k, m);
  for (Eigen::Index i = 0; i < out.c.size(); ++i)
    out.c.data()[i] = uniform01(rng) < density ? 1 : 0;

  out.a = out.b * out.c.cast<double>();
  if (noise_sigma > 0.0) {
    for (Eigen::Index i = 0; i < out.a.size(); ++i)
      out.a.data()[i] = std::max(0.0, out.a.data()[i] + noise_sigma * normal(rng));
  }
  return out;
}

}  // namespace nbmf
