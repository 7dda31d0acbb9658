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

#include <functional>
#include <span>
#include <vector>

namespace clq {

struct CobylaOptions {
  double rho_begin = 0.5;
  double rho_end = 1e-3;
  int max_evals = 200;
};

struct CobylaResult {
  std::vector<double> x;
  double f = 0;
  int evals = 0;
  /// True when the trust radius reached rho_end before the evaluation budget.
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Unconstrained minimization by linear approximations on a simplex with a
/// shrinking trust region (Powell's COBYLA without constraint handling).
CobylaResult cobyla_minimize(const Objective& f, std::vector<double> x0, const CobylaOptions& options = {});

}  // namespace clq
