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
#include <utility>
#include <vector>

#include "clq/oracle.hpp"

namespace clq {

struct ArRecord {
  double ar_exp = 1;
  double ar_min = 1;
  ExtremesMode extremes_mode = ExtremesMode::subspace;
  double c_expected = 0, c_min = 0, c_opt = 0, c_worst = 0;
  bool degenerate = false;  // c_opt == c_worst; both ratios set to 1
};

/// (c - c_worst) / (c_opt - c_worst) for the expected and best sampled cost.
ArRecord approximation_ratios(double c_expected, double c_min, const Extremes& extremes);

/// c_method / c_aco. Throws when c_aco <= 0.
double relative_ratio(double c_method, double c_aco);

/// ceil(variance / (delta^2 expectation^2)), at least 1.
std::int64_t required_shots(double expectation, double variance, double delta);

/// ceil(log(1 - pi) / log(1 - rho)), at least 1.
std::int64_t final_sampling_shots(double rho, double pi);

struct FitResult {
  double A = 0;
  double k = 0;
  double residual = 0;  // sum of squared log-space residuals
  int points_used = 0;
  bool converging = false;  // k > 0

  double ar(double p) const;
  /// Smallest integer depth >= 1 whose fitted curve reaches `target`.
  /// Throws std::domain_error when the fit does not converge.
  int p_star(double target) const;
};

/// Least squares of log(1 - ar) = log A - k p; points with ar = 1 are skipped.
FitResult fit_saturation(const std::vector<std::pair<double, double>>& points);

struct PolyFit {
  std::vector<double> coeffs;  // c0 + c1 x + c2 x^2 ...
  double r2 = 0;

  double operator()(double x) const;
};

PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree);

/// Slope of log y against log x.
double loglog_exponent(const std::vector<double>& x, const std::vector<double>& y);

double mean(const std::vector<double>& v);
double median(std::vector<double> v);
/// Standard error of the mean (sample sd / sqrt(n)); 0 for n < 2.
double std_err(const std::vector<double>& v);
/// sqrt(pi / 2) * std_err, the large-sample error of the median.
double median_std_err(const std::vector<double>& v);

}  // namespace clq
