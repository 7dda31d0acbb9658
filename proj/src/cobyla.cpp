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

#include "clq/cobyla.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace clq {

namespace {

constexpr double kAlpha = 0.25;  // minimum vertex-to-face distance, in units of rho
constexpr double kBeta = 2.1;    // maximum edge length, in units of rho
constexpr double kGamma = 0.5;   // geometry step length, in units of rho
constexpr double kDelta = 1.1;   // far-vertex threshold when dropping

}  // namespace

CobylaResult cobyla_minimize(const Objective& f, std::vector<double> x0, const CobylaOptions& options) {
  if (x0.empty()) throw std::invalid_argument("cobyla: empty starting point");
  if (!(options.rho_begin > 0) || !(options.rho_end > 0) || options.rho_end > options.rho_begin)
    throw std::invalid_argument("cobyla: need 0 < rho_end <= rho_begin");
  if (options.max_evals < 1) throw std::invalid_argument("cobyla: max_evals must be positive");
  const int d = static_cast<int>(x0.size());
  CobylaResult best;
  best.f = std::numeric_limits<double>::infinity();

  Eigen::VectorXd pivot = Eigen::Map<Eigen::VectorXd>(x0.data(), d);
  auto eval = [&](const Eigen::VectorXd& x) {
    const double v = f(std::span<const double>(x.data(), static_cast<std::size_t>(d)));
    ++best.evals;
    if (v < best.f) {
      best.f = v;
      best.x.assign(x.data(), x.data() + d);
    }
    return v;
  };
  auto out_of_budget = [&] { return best.evals >= options.max_evals; };

  double rho = options.rho_begin;
  double f_pivot = eval(pivot);

  Eigen::MatrixXd sim(d, d);  // row j: displacement of vertex j from the pivot
  Eigen::VectorXd fval(d);
  sim.setZero();
  for (int j = 0; j < d; ++j) {
    if (out_of_budget()) return best;
    sim(j, j) = rho;
    fval(j) = eval(pivot + sim.row(j).transpose());
  }

  bool poor_step = false;
  while (!out_of_budget()) {
    // Move the pivot to the best vertex.
    Eigen::Index jbest;
    if (fval.minCoeff(&jbest) < f_pivot) {
      const Eigen::RowVectorXd shift = sim.row(jbest);
      pivot += shift.transpose();
      for (int j = 0; j < d; ++j) sim.row(j) -= shift;
      sim.row(jbest) = -shift;
      std::swap(f_pivot, fval(jbest));
    }

    const Eigen::MatrixXd simi = sim.partialPivLu().inverse();
    const Eigen::VectorXd g = simi * (fval.array() - f_pivot).matrix();

    Eigen::VectorXd veta(d), vsig(d);
    for (int j = 0; j < d; ++j) {
      veta(j) = sim.row(j).norm();
      vsig(j) = 1.0 / simi.col(j).norm();
    }
    const double parsig = kAlpha * rho, pareta = kBeta * rho;
    const bool acceptable = (vsig.array() >= parsig).all() && (veta.array() <= pareta).all();

    if (poor_step) {
      poor_step = false;
      if (!acceptable) {
        Eigen::Index l;
        if (veta.maxCoeff(&l) <= pareta) vsig.minCoeff(&l);
        Eigen::VectorXd step = (kGamma * rho * vsig(l)) * simi.col(l);
        if (g.dot(step) > 0) step = -step;
        const double fnew = eval(pivot + step);
        sim.row(l) = step.transpose();
        fval(l) = fnew;
        continue;
      }
      if (rho <= options.rho_end) {
        best.converged = true;
        break;
      }
      rho *= 0.5;
      if (rho <= 1.5 * options.rho_end) rho = options.rho_end;
      continue;
    }

    const double gnorm = g.norm();
    if (!(gnorm > 0) || !std::isfinite(gnorm)) {
      poor_step = true;
      continue;
    }
    const Eigen::VectorXd step = (-rho / gnorm) * g;
    const double fnew = eval(pivot + step);
    const double predicted = rho * gnorm;
    const double actual = f_pivot - fnew;

    // Vertex to replace: largest volume factor, preferring distant vertices
    // whose replacement keeps the simplex well shaped.
    const Eigen::VectorXd lambda = simi.transpose() * step;  // lambda_j = simi.col(j) . step
    int jdrop = -1;
    double top = actual > 0 ? 1.0 : 0.0;
    for (int j = 0; j < d; ++j) {
      if (std::abs(lambda(j)) > top) {
        top = std::abs(lambda(j));
        jdrop = j;
      }
    }
    double edge = kDelta * rho;
    int far = -1;
    for (int j = 0; j < d; ++j) {
      const double sigbar = std::abs(lambda(j)) * vsig(j);
      if (sigbar >= parsig || sigbar >= vsig(j)) {
        const double dist = (sim.row(j).transpose() - step).norm();
        if (dist > edge) {
          edge = dist;
          far = j;
        }
      }
    }
    if (far >= 0) jdrop = far;
    if (jdrop < 0 && fnew < f_pivot) lambda.cwiseAbs().maxCoeff(&jdrop);
    if (jdrop >= 0) {
      sim.row(jdrop) = step.transpose();
      fval(jdrop) = fnew;
    }
    poor_step = actual < 0.1 * predicted;
  }
  return best;
}

}  // namespace clq
