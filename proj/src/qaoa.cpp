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

#include "clq/qaoa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "clq/cobyla.hpp"
#include "clq/qubo.hpp"

namespace clq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SubspaceState::SubspaceState(int n, std::vector<Amplitude> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
  if (n < 2) throw std::invalid_argument("SubspaceState: n must be >= 2");
  if (amps_.size() != subspace_size(n)) throw std::invalid_argument("SubspaceState: length must be n^n");
}

void QaoaParams::validate() const {
  if (gammas.empty() || gammas.size() != betas.size())
    throw std::invalid_argument("QaoaParams: gammas and betas must have equal, positive length");
  for (double v : gammas)
    if (!std::isfinite(v)) throw std::invalid_argument("QaoaParams: non-finite gamma");
  for (double v : betas)
    if (!std::isfinite(v)) throw std::invalid_argument("QaoaParams: non-finite beta");
}

std::vector<double> QaoaParams::flatten() const {
  std::vector<double> x(gammas);
  x.insert(x.end(), betas.begin(), betas.end());
  return x;
}

QaoaParams QaoaParams::unflatten(std::span<const double> x) {
  const std::size_t p = x.size() / 2;
  return {std::vector<double>(x.begin(), x.begin() + p), std::vector<double>(x.begin() + p, x.end())};
}

void QaoaConfig::validate() const {
  if (p < 1) throw std::invalid_argument("QaoaConfig: p must be >= 1");
  if (shots < 1) throw std::invalid_argument("QaoaConfig: shots must be >= 1");
  if (final_shots < 0) throw std::invalid_argument("QaoaConfig: final_shots must be >= 0");
  if (max_iters < 1) throw std::invalid_argument("QaoaConfig: max_iters must be >= 1");
}

SubspaceState init_state(int n, std::uint64_t cap) {
  if (n < 2) throw std::invalid_argument("init_state: n must be >= 2");
  const std::uint64_t size = subspace_size(n);
  if (size > cap) throw std::invalid_argument("init_state: n^n exceeds the size cap");
  const double a = 1.0 / std::sqrt(static_cast<double>(size));
  return SubspaceState(n, std::vector<Amplitude>(size, Amplitude(a, 0.0)));
}

void apply_cost_phase(SubspaceState& state, const TspProblem& problem, double gamma, Exec exec) {
  if (problem.n() != state.n()) throw std::invalid_argument("apply_cost_phase: size mismatch");
  kernels::apply_phase(state.amplitudes(), problem.subspace_costs(), gamma, exec);
}

void apply_grover_mixer(SubspaceState& state, double beta, Exec exec) {
  kernels::apply_grover_mixer(state.amplitudes(), state.n(), beta, exec);
}

SubspaceState evolve(const TspProblem& problem, const QaoaParams& params, Exec exec) {
  params.validate();
  SubspaceState state = init_state(problem.n());
  for (int j = 0; j < params.p(); ++j) {
    apply_cost_phase(state, problem, params.gammas[j], exec);
    apply_grover_mixer(state, params.betas[j], exec);
  }
  return state;
}

double expectation(const SubspaceState& state, const TspProblem& problem, Exec exec) {
  if (problem.n() != state.n()) throw std::invalid_argument("expectation: size mismatch");
  return kernels::expectation(state.amplitudes(), problem.subspace_costs(), exec);
}

Sampler::Sampler(const SubspaceState& state) : cdf_(state.size()) {
  double acc = 0;
  auto amps = state.amplitudes();
  for (std::size_t k = 0; k < amps.size(); ++k) {
    acc += std::norm(amps[k]);
    cdf_[k] = acc;
  }
}

std::uint64_t Sampler::draw(Rng& rng) const {
  const double u = uniform01(rng) * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
}

Histogram sample(const SubspaceState& state, int shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("sample: shots must be >= 1");
  Sampler sampler(state);
  Histogram h;
  for (int s = 0; s < shots; ++s) ++h[sampler.draw(rng)];
  return h;
}

QaoaRunRecord run_qaoa(const TspProblem& problem, const QaoaConfig& config) {
  config.validate();
  QaoaRunRecord rec;
  const auto t0 = Clock::now();
  const auto costs = problem.subspace_costs();
  Rng rng(config.seed);
  std::vector<double> x0(2 * static_cast<std::size_t>(config.p));
  for (double& v : x0) v = uniform(rng, 0.0, 2 * std::numbers::pi);
  rec.wall_times.init = seconds_since(t0);

  double best_cost = std::numeric_limits<double>::infinity();
  std::uint64_t best_idx = 0;
  auto observe = [&](std::uint64_t idx) {
    if (costs[idx] < best_cost) {
      best_cost = costs[idx];
      best_idx = idx;
    }
  };

  const auto t1 = Clock::now();
  Objective objective = [&](std::span<const double> x) {
    const SubspaceState state = evolve(problem, QaoaParams::unflatten(x), config.exec);
    if (config.objective == ObjectiveMode::exact) return expectation(state, problem, config.exec);
    const Sampler sampler(state);
    double sum = 0;
    for (int s = 0; s < config.shots; ++s) {
      const auto idx = sampler.draw(rng);
      observe(idx);
      sum += costs[idx];
    }
    return sum / config.shots;
  };
  const CobylaResult opt =
      cobyla_minimize(objective, x0, {.rho_begin = config.rho_begin, .rho_end = config.rho_end, .max_evals = config.max_iters});
  rec.params = QaoaParams::unflatten(opt.x);
  rec.iterations_used = opt.evals;
  rec.converged = opt.converged;
  rec.wall_times.optimize = seconds_since(t1);

  const auto t2 = Clock::now();
  const SubspaceState final_state = evolve(problem, rec.params, config.exec);
  rec.final_expectation = expectation(final_state, problem, config.exec);
  rec.shot_histogram = sample(final_state, config.effective_final_shots(), rng);
  for (const auto& [idx, count] : rec.shot_histogram) observe(idx);
  rec.wall_times.sample = seconds_since(t2);

  rec.best_cost = best_cost;
  rec.best_sequence = decode_sequence(best_idx, problem.n());
  return rec;
}

namespace {

// Householder reflection exchanging |0...0> and the one-hot uniform state of
// an n-qubit register; Hermitian and its own inverse.
struct RegisterPrep {
  int n;
  std::vector<double> v;  // |0> - |D>, real
  double vv;

  explicit RegisterPrep(int n_) : n(n_), v(std::size_t{1} << n_, 0.0) {
    v[0] = 1.0;
    for (int i = 0; i < n; ++i) v[std::size_t{1} << i] -= 1.0 / std::sqrt(static_cast<double>(n));
    vv = 0;
    for (double x : v) vv += x * x;
  }

  void apply(std::vector<Amplitude>& reg) const {
    Amplitude dot = 0;
    for (std::size_t r = 0; r < reg.size(); ++r) dot += v[r] * reg[r];
    const Amplitude scale = 2.0 * dot / vv;
    for (std::size_t r = 0; r < reg.size(); ++r) reg[r] -= scale * v[r];
  }
};

template <class F>
void for_each_register_slice(std::vector<Amplitude>& psi, int n, int t, F op) {
  const int total_bits = n * n;
  const std::uint64_t reg_mask = ((std::uint64_t{1} << n) - 1) << (t * n);
  std::vector<Amplitude> reg(std::size_t{1} << n);
  for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << total_bits); ++rest) {
    if (rest & reg_mask) continue;
    for (std::uint64_t r = 0; r < reg.size(); ++r) reg[r] = psi[rest | (r << (t * n))];
    op(reg);
    for (std::uint64_t r = 0; r < reg.size(); ++r) psi[rest | (r << (t * n))] = reg[r];
  }
}

}  // namespace

std::vector<Amplitude> full_space_reference(const TspProblem& problem, const QaoaParams& params) {
  params.validate();
  const int n = problem.n();
  if (n > 3) throw std::invalid_argument("full_space_reference: n must be <= 3");
  const int bits = n * n;
  const std::uint64_t size = std::uint64_t{1} << bits;
  std::vector<double> diag(size);
  for (std::uint64_t m = 0; m < size; ++m) diag[m] = bitstring_cost(problem, mask_to_bits(m, bits), false);

  const RegisterPrep prep(n);
  std::vector<Amplitude> psi(size, 0.0);
  psi[0] = 1.0;
  for (int t = 0; t < n; ++t) for_each_register_slice(psi, n, t, [&](auto& reg) { prep.apply(reg); });

  for (int j = 0; j < params.p(); ++j) {
    for (std::uint64_t m = 0; m < size; ++m) psi[m] *= std::polar(1.0, -params.gammas[j] * diag[m]);
    const Amplitude phase = std::polar(1.0, -params.betas[j]);
    for (int t = 0; t < n; ++t)
      for_each_register_slice(psi, n, t, [&](auto& reg) {
        prep.apply(reg);
        reg[0] *= phase;
        prep.apply(reg);
      });
  }
  return psi;
}

std::uint64_t embed_index(std::uint64_t sequence_index, int n) {
  std::uint64_t mask = 0;
  for (int t = 0; t < n; ++t) {
    const auto city = sequence_index % static_cast<std::uint64_t>(n);
    sequence_index /= static_cast<std::uint64_t>(n);
    mask |= std::uint64_t{1} << (t * n + static_cast<int>(city));
  }
  return mask;
}

std::uint64_t depth_of_circuit_proxy(int n, int p) {
  if (n < 2 || p < 1) throw std::invalid_argument("depth_of_circuit_proxy: need n >= 2 and p >= 1");
  Grid<double> unit(n, n, 1.0);
  for (int i = 0; i < n; ++i) unit(i, i) = 0.0;
  const TspProblem generic(CostMatrix(std::move(unit)), {}, {.build_table = false});
  return count_terms(ising_terms(generic)).pair * static_cast<std::uint64_t>(p);
}

}  // namespace clq
