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

#include "clq/metrics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace clq {

ArRecord approximation_ratios(double c_expected, double c_min, const Extremes& extremes) {
  ArRecord r;
  r.extremes_mode = extremes.mode;
  r.c_expected = c_expected;
  r.c_min = c_min;
  r.c_opt = extremes.c_opt;
  r.c_worst = extremes.c_worst;
  const double span = extremes.c_opt - extremes.c_worst;
  if (!(span < 0)) {
    r.degenerate = true;
    return r;
  }
  r.ar_exp = (c_expected - extremes.c_worst) / span;
  r.ar_min = (c_min - extremes.c_worst) / span;
  return r;
}

double relative_ratio(double c_method, double c_aco) {
  if (!(c_aco > 0)) throw std::invalid_argument("relative_ratio: reference cost must be positive");
  return c_method / c_aco;
}

std::int64_t required_shots(double expectation, double variance, double delta) {
  if (!(expectation > 0) || !(delta > 0) || variance < 0)
    throw std::invalid_argument("required_shots: need expectation > 0, delta > 0, variance >= 0");
  const double s = std::ceil(variance / (delta * delta * expectation * expectation));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(s));
}

std::int64_t final_sampling_shots(double rho, double pi) {
  if (!(rho > 0 && rho <= 1) || !(pi > 0 && pi < 1))
    throw std::invalid_argument("final_sampling_shots: need 0 < rho <= 1 and 0 < pi < 1");
  if (rho == 1) return 1;
  const double s = std::ceil(std::log(1 - pi) / std::log(1 - rho));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(s));
}

double FitResult::ar(double p) const { return 1 - A * std::exp(-k * p); }

int FitResult::p_star(double target) const {
  if (!converging) throw std::domain_error("p_star: saturation fit did not converge (k <= 0)");
  if (!(target < 1)) throw std::invalid_argument("p_star: target must be < 1");
  const double p = std::ceil((std::log(A) - std::log(1 - target)) / k - 1e-12);
  return std::max(1, static_cast<int>(p));
}

FitResult fit_saturation(const std::vector<std::pair<double, double>>& points) {
  std::vector<double> x, y;
  for (const auto& [p, ar] : points) {
    if (!(ar <= 1)) throw std::invalid_argument("fit_saturation: ar must be <= 1");
    if (ar >= 1) continue;
    x.push_back(p);
    y.push_back(std::log(1 - ar));
  }
  if (x.size() < 2) throw std::invalid_argument("fit_saturation: fewer than 2 usable points");
  const PolyFit line = fit_polynomial(x, y, 1);
  FitResult f;
  f.A = std::exp(line.coeffs[0]);
  f.k = -line.coeffs[1];
  f.points_used = static_cast<int>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) f.residual += std::pow(y[i] - line(x[i]), 2);
  f.converging = f.k > 0;
  return f;
}

double PolyFit::operator()(double x) const {
  double v = 0;
  for (auto c = coeffs.rbegin(); c != coeffs.rend(); ++c) v = v * x + *c;
  return v;
}

PolyFit fit_polynomial(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_polynomial: size mismatch");
  if (degree < 0 || static_cast<int>(x.size()) <= degree)
    throw std::invalid_argument("fit_polynomial: need more points than the degree");
  const auto m = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd a(m, degree + 1);
  Eigen::VectorXd b(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double pw = 1;
    for (int d = 0; d <= degree; ++d) {
      a(i, d) = pw;
      pw *= x[i];
    }
    b(i) = y[i];
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);
  PolyFit fit;
  fit.coeffs.assign(c.data(), c.data() + c.size());
  const double ybar = b.mean();
  const double ss_tot = (b.array() - ybar).square().sum();
  const double ss_res = (a * c - b).squaredNorm();
  fit.r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : 1.0;
  return fit;
}

double loglog_exponent(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw std::invalid_argument("loglog_exponent: values must be positive");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return fit_polynomial(lx, ly, 1).coeffs[1];
}

double mean(const std::vector<double>& v) {
  if (v.empty()) throw std::invalid_argument("mean: empty input");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median: empty input");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double std_err(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

double median_std_err(const std::vector<double>& v) { return std::sqrt(std::numbers::pi / 2) * std_err(v); }

}  // namespace clq
