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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "clq/metrics.hpp"
#include "clq/oracle.hpp"
#include "clq/qubo.hpp"
#include "test_util.hpp"

using namespace clq;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

SubspaceState random_state(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Amplitude> a(subspace_size(n));
  double norm = 0;
  for (auto& x : a) {
    x = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return SubspaceState(n, a);
}

QaoaParams random_params(int p, Rng& rng) {
  QaoaParams q;
  for (int j = 0; j < p; ++j) {
    q.gammas.push_back(uniform(rng, 0, kTwoPi));
    q.betas.push_back(uniform(rng, 0, kTwoPi));
  }
  return q;
}

Amplitude inner(const SubspaceState& a, const SubspaceState& b) {
  Amplitude s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
  return s;
}

double total_norm(const SubspaceState& s) { return std::real(inner(s, s)); }

}  // namespace

TEST(QaoaParams, flatten_round_trip_and_validation) {
  QaoaParams p{{0.1, 0.2}, {0.3, 0.4}};
  EXPECT_EQ(p.flatten(), (std::vector<double>{0.1, 0.2, 0.3, 0.4}));
  const auto q = QaoaParams::unflatten(p.flatten());
  EXPECT_EQ(q.gammas, p.gammas);
  EXPECT_EQ(q.betas, p.betas);
  EXPECT_THROW((QaoaParams{{0.1}, {}}).validate(), std::invalid_argument);
  EXPECT_THROW((QaoaParams{{NAN}, {0.1}}).validate(), std::invalid_argument);
}

TEST(InitState, uniform_amplitudes) {
  const auto s3 = init_state(3);
  EXPECT_EQ(s3.size(), 27u);
  for (auto a : s3.amplitudes()) EXPECT_NEAR(std::abs(a - Amplitude(1 / std::sqrt(27.0))), 0, 1e-15);
  const auto s2 = init_state(2);
  for (auto a : s2.amplitudes()) EXPECT_DOUBLE_EQ(a.real(), 0.5);
  EXPECT_THROW(init_state(8, 1000), std::invalid_argument);
  EXPECT_THROW(init_state(1), std::invalid_argument);
}

TEST(CostPhase, identity_and_global_phase) {
  const TspProblem p(tu::random_matrix(3, 1));
  auto s = random_state(3, 2);
  const auto before = s;
  apply_cost_phase(s, p, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s.amplitudes()[i], before.amplitudes()[i]);

  // flat landscape: a global phase only
  const std::vector<double> flat(27, 4.0);
  auto t = random_state(3, 3);
  const auto orig = t;
  kernels::serial::apply_phase(t.amplitudes(), flat, 0.7);
  const Amplitude phase = std::exp(Amplitude(0, -0.7 * 4.0));
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(std::abs(t.amplitudes()[i] - phase * orig.amplitudes()[i]), 0, 1e-15);
}

TEST(GroverMixer, identities) {
  for (double beta : {0.0, kTwoPi}) {
    auto s = random_state(3, 4);
    const auto before = s;
    apply_grover_mixer(s, beta);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(s.amplitudes()[i] - before.amplitudes()[i]), 0, 1e-14);
  }
}

TEST(GroverMixer, uniform_state_picks_up_global_phase) {
  for (int n : {2, 3, 4}) {
    auto s = init_state(n);
    const double beta = 0.81;
    apply_grover_mixer(s, beta);
    const Amplitude want = std::exp(Amplitude(0, -n * beta)) / std::sqrt(static_cast<double>(subspace_size(n)));
    for (auto a : s.amplitudes()) EXPECT_NEAR(std::abs(a - want), 0, 1e-13);
  }
}

TEST(GroverMixer, unitary_and_invertible) {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const double beta = uniform(rng, -4, 4);
    auto u = random_state(3, 100 + trial);
    auto v = random_state(3, 200 + trial);
    const Amplitude before = inner(u, v);
    const auto u0 = u;
    apply_grover_mixer(u, beta);
    apply_grover_mixer(v, beta);
    EXPECT_NEAR(std::abs(inner(u, v) - before), 0, 1e-10);
    EXPECT_NEAR(total_norm(u), 1, 1e-9);
    apply_grover_mixer(u, -beta);
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(std::abs(u.amplitudes()[i] - u0.amplitudes()[i]), 0, 1e-10);
  }
}

TEST(GroverMixer, single_register_formula) {
  // n = 2: register 0 is the fast index. Check one slice by hand.
  std::vector<Amplitude> a{{0.1, 0}, {0.7, 0}, {0.5, 0.1}, {0.2, -0.4}};
  SubspaceState s(2, a);
  const double beta = 1.1;
  const Amplitude k = 1.0 - std::exp(Amplitude(0, -beta));
  // register 0 first
  std::vector<Amplitude> b(4);
  for (int hi = 0; hi < 2; ++hi) {
    const Amplitude m = (a[2 * hi] + a[2 * hi + 1]) / 2.0;
    b[2 * hi] = a[2 * hi] - k * m;
    b[2 * hi + 1] = a[2 * hi + 1] - k * m;
  }
  // then register 1
  std::vector<Amplitude> c(4);
  for (int lo = 0; lo < 2; ++lo) {
    const Amplitude m = (b[lo] + b[2 + lo]) / 2.0;
    c[lo] = b[lo] - k * m;
    c[2 + lo] = b[2 + lo] - k * m;
  }
  apply_grover_mixer(s, beta);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(s.amplitudes()[i] - c[i]), 0, 1e-14);
}

TEST(Evolve, trivial_and_composition) {
  const TspProblem p(tu::random_matrix(3, 5));
  const auto s = evolve(p, {{0.0}, {0.0}});
  const auto u = init_state(3);
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s.amplitudes()[i], u.amplitudes()[i]);

  const QaoaParams two{{0.3, 0.9}, {1.2, 0.4}};
  const auto direct = evolve(p, two);
  auto manual = evolve(p, {{0.3}, {1.2}});
  apply_cost_phase(manual, p, 0.9);
  apply_grover_mixer(manual, 0.4);
  for (std::size_t i = 0; i < direct.size(); ++i) EXPECT_NEAR(std::abs(direct.amplitudes()[i] - manual.amplitudes()[i]), 0, 1e-14);
}

TEST(FullSpaceReference, trivial_params_give_uniform_one_hot) {
  const TspProblem p(tu::random_matrix(2, 6));
  const auto full = full_space_reference(p, {{0.0}, {0.0}});
  ASSERT_EQ(full.size(), 16u);
  for (std::uint64_t m = 0; m < 16; ++m) {
    bool feasible = false;
    for (std::uint64_t idx = 0; idx < 4; ++idx) feasible |= embed_index(idx, 2) == m;
    EXPECT_NEAR(std::abs(full[m]), feasible ? 0.5 : 0.0, 1e-12) << m;
  }
}

TEST(FullSpaceReference, matches_subspace_simulator) {
  Rng rng(77);
  for (int n : {2, 3}) {
    ConstraintSet c;
    c.time = BinaryMatrix(n, n, 0);
    (*c.time)(0, n - 1) = 1;
    const TspProblem p(tu::random_matrix(n, 60 + n), c);
    for (int depth = 1; depth <= 2; ++depth) {
      for (int trial = 0; trial < 3; ++trial) {
        const QaoaParams params = random_params(depth, rng);
        const auto sub = evolve(p, params);
        const auto full = full_space_reference(p, params);
        double norm = 0, inside = 0;
        for (auto a : full) norm += std::norm(a);
        for (std::uint64_t idx = 0; idx < sub.size(); ++idx) {
          const Amplitude f = full[embed_index(idx, n)];
          inside += std::norm(f);
          EXPECT_NEAR(std::abs(f - sub.amplitudes()[idx]), 0, 1e-12);
        }
        EXPECT_NEAR(norm, 1, 1e-12);
        EXPECT_LE(norm - inside, 1e-14);
      }
    }
  }
  EXPECT_THROW(full_space_reference(TspProblem(tu::random_matrix(4, 1)), {{0.1}, {0.1}}), std::invalid_argument);
}

TEST(Expectation, uniform_and_delta) {
  const TspProblem p(tu::random_matrix(3, 8));
  const auto table = p.subspace_costs();
  double mean = 0;
  for (double c : table) mean += c / 27;
  EXPECT_NEAR(expectation(init_state(3), p), mean, 1e-9);

  std::vector<Amplitude> delta(27, 0.0);
  delta[11] = Amplitude(0, 1);
  EXPECT_NEAR(expectation(SubspaceState(3, delta), p), table[11], 1e-12);
}

TEST(Expectation, agrees_with_monte_carlo) {
  const TspProblem p(tu::random_matrix(3, 10));
  const auto s = random_state(3, 11);
  const auto table = p.subspace_costs();
  Rng rng(12);
  const Sampler sampler(s);
  const int shots = 1000000;
  double sum = 0, sq = 0;
  for (int i = 0; i < shots; ++i) {
    const double c = table[sampler.draw(rng)];
    sum += c;
    sq += c * c;
  }
  const double m = sum / shots;
  const double se = std::sqrt((sq / shots - m * m) / shots);
  EXPECT_NEAR(m, expectation(s, p), 3 * se);
}

TEST(Sample, delta_uniform_and_determinism) {
  std::vector<Amplitude> delta(27, 0.0);
  delta[5] = 1.0;
  Rng r1(1);
  const Histogram h = sample(SubspaceState(3, delta), 500, r1);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.at(5), 500);

  Rng r2(2);
  const Histogram u = sample(init_state(2), 100000, r2);
  const double sigma = std::sqrt(100000 * 0.25 * 0.75);
  for (std::uint64_t idx = 0; idx < 4; ++idx) EXPECT_NEAR(u.at(idx), 25000, 5 * sigma);

  const auto s = random_state(3, 13);
  Rng a(99), b(99);
  EXPECT_EQ(sample(s, 1000, a), sample(s, 1000, b));
  Rng c(1);
  EXPECT_THROW(sample(s, 0, c), std::invalid_argument);
}

TEST(Sample, sampled_mean_is_unbiased) {
  const TspProblem p(tu::random_matrix(3, 14));
  const auto s = evolve(p, {{0.4}, {1.0}});
  const auto table = p.subspace_costs();
  const double exact = expectation(s, p);
  Rng rng(15);
  const int reps = 200, shots = 50;
  std::vector<double> means;
  for (int r = 0; r < reps; ++r) {
    const Histogram h = sample(s, shots, rng);
    double sum = 0;
    for (const auto& [idx, count] : h) sum += table[idx] * count;
    means.push_back(sum / shots);
  }
  EXPECT_NEAR(clq::mean(means), exact, 4 * std_err(means));
}

TEST(RunQaoa, deterministic_per_seed) {
  const TspProblem p(tu::random_matrix(3, 16));
  QaoaConfig cfg;
  cfg.p = 2;
  cfg.shots = 20;
  cfg.seed = 123;
  const auto a = run_qaoa(p, cfg);
  const auto b = run_qaoa(p, cfg);
  EXPECT_EQ(a.best_sequence, b.best_sequence);
  EXPECT_EQ(a.best_cost, b.best_cost);
  EXPECT_EQ(a.final_expectation, b.final_expectation);
  EXPECT_EQ(a.params.gammas, b.params.gammas);
  EXPECT_EQ(a.params.betas, b.params.betas);
  EXPECT_EQ(a.iterations_used, b.iterations_used);
  EXPECT_EQ(a.shot_histogram, b.shot_histogram);
}

TEST(RunQaoa, record_invariants) {
  const TspProblem p(tu::random_matrix(4, 17));
  QaoaConfig cfg;
  cfg.shots = 30;
  cfg.final_shots = 40;
  cfg.max_iters = 25;
  cfg.seed = 4;
  const auto r = run_qaoa(p, cfg);
  EXPECT_LE(r.iterations_used, 25);
  EXPECT_EQ(r.params.p(), 1);
  int total = 0;
  const auto table = p.subspace_costs();
  for (const auto& [idx, count] : r.shot_histogram) {
    total += count;
    EXPECT_LE(r.best_cost, table[idx]);
  }
  EXPECT_EQ(total, 40);
  EXPECT_DOUBLE_EQ(r.best_cost, tour_cost(p, r.best_sequence));
  EXPECT_NEAR(r.final_expectation, expectation(evolve(p, r.params), p), 1e-9);
  for (double g : r.params.gammas) EXPECT_TRUE(std::isfinite(g));
}

TEST(RunQaoa, three_cities_ten_shots_reach_optimum) {
  const TspProblem p(tu::random_matrix(3, 18));
  const Extremes ex = extremes(p, ExtremesMode::subspace);
  double sum = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    QaoaConfig cfg;
    cfg.shots = 10;
    cfg.seed = seed;
    const auto r = run_qaoa(p, cfg);
    sum += approximation_ratios(r.final_expectation, r.best_cost, ex).ar_min;
  }
  EXPECT_DOUBLE_EQ(sum / 5, 1.0);
}

TEST(RunQaoa, flat_landscape_is_always_optimal) {
  Grid<double> g(4, 4, 2.0);
  for (int i = 0; i < 4; ++i) g(i, i) = 0;
  const TspProblem p{CostMatrix(g)};
  const Extremes ex = extremes(p, ExtremesMode::subspace);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    QaoaConfig cfg;
    cfg.shots = 50;
    cfg.seed = seed;
    const auto r = run_qaoa(p, cfg);
    EXPECT_DOUBLE_EQ(approximation_ratios(r.final_expectation, r.best_cost, ex).ar_min, 1.0);
  }
}

TEST(RunQaoa, exact_objective_and_config_validation) {
  const TspProblem p(tu::random_matrix(3, 19));
  QaoaConfig cfg;
  cfg.objective = ObjectiveMode::exact;
  cfg.seed = 3;
  const auto r = run_qaoa(p, cfg);
  EXPECT_GE(r.iterations_used, 1);
  QaoaConfig bad;
  bad.shots = 0;
  EXPECT_THROW(run_qaoa(p, bad), std::invalid_argument);
  bad = {};
  bad.max_iters = 0;
  EXPECT_THROW(run_qaoa(p, bad), std::invalid_argument);
}

TEST(DepthProxy, scaling) {
  EXPECT_EQ(depth_of_circuit_proxy(4, 2), 2 * depth_of_circuit_proxy(4, 1));
  const double ratio = static_cast<double>(depth_of_circuit_proxy(6, 1)) / depth_of_circuit_proxy(3, 1);
  EXPECT_GE(ratio, 8);
  EXPECT_LE(ratio, 32);

  // n = 2: every nonzero off-diagonal QUBO coefficient is one ZZ term
  Grid<double> unit(2, 2, 1.0);
  unit(0, 0) = unit(1, 1) = 0;
  const QuboModel q = qubo_matrix(TspProblem(CostMatrix(unit)));
  std::uint64_t pairs = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) pairs += q.at(a, b) != 0;
  EXPECT_EQ(depth_of_circuit_proxy(2, 1), pairs);
}
