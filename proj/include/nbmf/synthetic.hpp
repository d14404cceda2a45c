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

#include <cstdint>

#include "nbmf/matrix.hpp"

namespace nbmf {

struct PlantedInstance {
  DenseMatrix a;
  DenseMatrix b;   // n x k, entries |N(0,1)|
  BinaryMatrix c;  // k x m, entries Bernoulli(density)
};

/// A = max(0, B C + N(0, noise_sigma^2)) entrywise.
PlantedInstance generate_synthetic(Eigen::Index n, Eigen::Index m, Eigen::Index k,
                                   double noise_sigma, double density, std::uint64_t seed);

}  // namespace nbmf
