// Copyright 2026 The clqaoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "clq/cost_model.hpp"
#include "clq/rng.hpp"

namespace clq::tu {

inline CostMatrix random_matrix(int n, std::uint64_t seed, double hi = 10.0) {
  Rng rng(seed);
  Grid<double> g(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g(i, j) = uniform(rng, 0.0, hi);
  return CostMatrix(std::move(g));
}

/// Strictly positive entries, for heuristics that need 1/d.
inline CostMatrix positive_matrix(int n, std::uint64_t seed) {
  Rng rng(seed);
  Grid<double> g(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g(i, j) = uniform(rng, 1.0, 10.0);
  return CostMatrix(std::move(g));
}

inline std::vector<std::vector<double>> rows(const CostMatrix& m) {
  std::vector<std::vector<double>> r(m.n(), std::vector<double>(m.n()));
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) r[i][j] = m(i, j);
  return r;
}

}  // namespace clq::tu
