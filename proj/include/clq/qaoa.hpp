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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "clq/cost_model.hpp"
#include "clq/kernels.hpp"
#include "clq/rng.hpp"

namespace clq {

using kernels::Amplitude;
using kernels::Exec;

/// State restricted to the one-city-per-step slice: n^n amplitudes indexed
/// by the sequence index sum_t c_t n^t.
class SubspaceState {
 public:
  SubspaceState(int n, std::vector<Amplitude> amplitudes);

  int n() const { return n_; }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::size_t size() const { return amps_.size(); }

 private:
  int n_;
  std::vector<Amplitude> amps_;
};

struct QaoaParams {
  std::vector<double> gammas;
  std::vector<double> betas;

  int p() const { return static_cast<int>(gammas.size()); }
  /// Throws std::invalid_argument when lengths differ, are zero, or a value
  /// is not finite.
  void validate() const;
  /// Packs as [gamma_1..gamma_p, beta_1..beta_p].
  std::vector<double> flatten() const;
  static QaoaParams unflatten(std::span<const double> x);
};

enum class ObjectiveMode { sampled, exact };

struct QaoaConfig {
  int p = 1;
  int shots = 100;          // s, per optimizer evaluation
  int final_shots = 0;      // s*, 0 means s* = s
  int max_iters = 200;
  ObjectiveMode objective = ObjectiveMode::sampled;
  std::uint64_t seed = 0;
  double rho_begin = 0.5;
  double rho_end = 1e-3;
  Exec exec = Exec::parallel;

  void validate() const;
  int effective_final_shots() const { return final_shots > 0 ? final_shots : shots; }
};

/// Sequence index -> count.
using Histogram = std::map<std::uint64_t, int>;

struct PhaseTimes {
  double init = 0, optimize = 0, sample = 0;  // seconds
};

struct QaoaRunRecord {
  Sequence best_sequence;
  double best_cost = 0;
  double final_expectation = 0;
  QaoaParams params;
  int iterations_used = 0;
  bool converged = false;
  Histogram shot_histogram;  // final sampling only
  PhaseTimes wall_times;
};

SubspaceState init_state(int n, std::uint64_t cap = kDefaultTableCap);
void apply_cost_phase(SubspaceState& state, const TspProblem& problem, double gamma, Exec exec = Exec::parallel);
void apply_grover_mixer(SubspaceState& state, double beta, Exec exec = Exec::parallel);
SubspaceState evolve(const TspProblem& problem, const QaoaParams& params, Exec exec = Exec::parallel);
double expectation(const SubspaceState& state, const TspProblem& problem, Exec exec = Exec::parallel);

/// Inverse-CDF sampler over |amplitude|^2.
class Sampler {
 public:
  explicit Sampler(const SubspaceState& state);
  std::uint64_t draw(Rng& rng) const;

 private:
  std::vector<double> cdf_;
};

Histogram sample(const SubspaceState& state, int shots, Rng& rng);

QaoaRunRecord run_qaoa(const TspProblem& problem, const QaoaConfig& config);

/// Statevector over all 2^(n^2) bit strings (bit q = t*n + i), evolved with
/// per-register state preparation, the diagonal phase from bitstring_cost,
/// and the register-wise Grover mixer written as U_s (I - (1-e^{-ib})|0><0|) U_s^dag.
/// Requires n <= 3.
std::vector<Amplitude> full_space_reference(const TspProblem& problem, const QaoaParams& params);

/// Index in the full space of the one-hot image of a sequence.
std::uint64_t embed_index(std::uint64_t sequence_index, int n);

/// Number of two-qubit interaction applications for depth p: ZZ-term count
/// of an n-city instance times p.
std::uint64_t depth_of_circuit_proxy(int n, int p);

}  // namespace clq
