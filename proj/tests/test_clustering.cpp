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

#include "clq/clustering.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "clq/heuristics.hpp"
#include "clq/oracle.hpp"
#include "test_util.hpp"

using namespace clq;

namespace {

CostMatrix on_line(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  Grid<double> g(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = std::abs(x[i] - x[j]);
  return CostMatrix(std::move(g));
}

// Points in the plane, a few tight blobs.
CostMatrix blobs(int per, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<double, double>> pts;
  for (int b = 0; b < count; ++b)
    for (int i = 0; i < per; ++i) pts.push_back({100.0 * b + uniform(rng, 0, 1), 37.0 * (b % 3) + uniform(rng, 0, 1)});
  const int n = static_cast<int>(pts.size());
  Grid<double> g(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
  return CostMatrix(std::move(g));
}

}  // namespace

TEST(Ahc, separated_pairs) {
  const CostMatrix w = on_line({0, 50, 1, 51});
  for (auto l : {Linkage::average, Linkage::complete, Linkage::single})
    EXPECT_EQ(ahc_cluster(w, 2, l), (std::vector<std::vector<int>>{{0, 2}, {1, 3}}));
}

TEST(Ahc, k_equals_n_and_one) {
  const CostMatrix w = tu::random_matrix(5, 3);
  EXPECT_EQ(ahc_cluster(w, 5), (std::vector<std::vector<int>>{{0}, {1}, {2}, {3}, {4}}));
  EXPECT_EQ(ahc_cluster(w, 1), (std::vector<std::vector<int>>{{0, 1, 2, 3, 4}}));
  EXPECT_THROW(ahc_cluster(w, 0), std::invalid_argument);
  EXPECT_THROW(ahc_cluster(w, 6), std::invalid_argument);
}

TEST(Ahc, three_points) {
  EXPECT_EQ(ahc_cluster(on_line({0, 1, 10}), 2), (std::vector<std::vector<int>>{{0, 1}, {2}}));
}

TEST(Ahc, symmetrizes) {
  // asymmetric but (w + w^T) / 2 is the line 0,1,10
  const CostMatrix w = CostMatrix::from_rows({{0, 0, 20}, {2, 0, 3}, {0, 15, 0}});
  EXPECT_EQ(ahc_cluster(w, 2), (std::vector<std::vector<int>>{{0, 1}, {2}}));
}

TEST(Ahc, linkages_differ) {
  // single chains 0-1-2-3 at spacing 1,1.5,1 before joining 4 at 2.4; complete does not
  const CostMatrix w = on_line({0, 1, 2.5, 3.5, 5.9});
  EXPECT_EQ(ahc_cluster(w, 2, Linkage::single), (std::vector<std::vector<int>>{{0, 1, 2, 3}, {4}}));
  EXPECT_EQ(ahc_cluster(w, 2, Linkage::complete), (std::vector<std::vector<int>>{{0, 1}, {2, 3, 4}}));
}

TEST(Ahc, partition_of_members) {
  const CostMatrix w = tu::random_matrix(17, 4);
  for (int k = 1; k <= 17; ++k) {
    const auto c = ahc_cluster(w, k);
    ASSERT_EQ(static_cast<int>(c.size()), k);
    std::set<int> seen;
    for (const auto& g : c) {
      EXPECT_FALSE(g.empty());
      EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
      seen.insert(g.begin(), g.end());
    }
    EXPECT_EQ(seen.size(), 17u);
  }
}

TEST(Medoid, examples) {
  const CostMatrix w = on_line({0, 1, 2, 10});
  EXPECT_EQ(medoid({0, 1, 2}, w), 1);
  EXPECT_EQ(medoid({0, 3}, w), 0);  // tie to smallest
  EXPECT_EQ(medoid({3}, w), 3);
  EXPECT_THROW(medoid({}, w), std::invalid_argument);
}

TEST(MetaMatrix, uses_medoids) {
  const CostMatrix w = on_line({0, 1, 2, 10, 11, 12});
  const CostMatrix m = meta_matrix({{0, 1, 2}, {3, 4, 5}}, w);
  ASSERT_EQ(m.n(), 2);
  EXPECT_DOUBLE_EQ(m(0, 1), 10);  // 1 -> 4
  EXPECT_DOUBLE_EQ(m(1, 0), 10);
  EXPECT_THROW(meta_matrix({{0, 1}}, w), std::invalid_argument);
}

TEST(EntryExit, cheapest_links) {
  const CostMatrix w = on_line({0, 1, 10, 11, 20, 21});
  const auto t = entry_exit({{0, 1}, {2, 3}, {4, 5}}, w);
  ASSERT_EQ(t.size(), 3u);
  // 1 -> 2 and 3 -> 4 are cheapest; closing 4 -> 1 collides twice
  EXPECT_EQ(t[0].exit_city, 0);
  EXPECT_EQ(t[0].entry_city, 2);
  EXPECT_EQ(t[1].exit_city, 3);
  EXPECT_EQ(t[1].entry_city, 4);
  EXPECT_EQ(t[2].exit_city, 5);
  EXPECT_EQ(t[2].entry_city, 1);
}

TEST(EntryExit, collision_rule) {
  // cluster {1,2}: cheapest in and cheapest out both use city 1
  const CostMatrix w = on_line({0, 5, 9});
  const auto ends = plan_endpoints({{0}, {1, 2}}, w, true);
  EXPECT_EQ(ends[1].entry, 1);
  EXPECT_NE(ends[1].exit, ends[1].entry);
  EXPECT_EQ(ends[1].exit, 2);
  EXPECT_EQ(ends[0].entry, ends[0].exit);  // singleton may reuse its city
}

TEST(PlanEndpoints, path_respects_fixed_ends) {
  const CostMatrix w = on_line({0, 1, 2, 10, 11, 12});
  const auto ends = plan_endpoints({{0, 1, 2}, {3, 4, 5}}, w, false, 1, 4);
  EXPECT_EQ(ends[0].entry, 1);
  EXPECT_EQ(ends[1].exit, 4);
  EXPECT_EQ(ends[0].exit, 2);
  EXPECT_EQ(ends[1].entry, 3);
  EXPECT_THROW(plan_endpoints({{0, 1, 2}, {3, 4, 5}}, w, false), std::invalid_argument);
}

TEST(PinEndpoints, m2_and_m3) {
  const CostMatrix w2 = CostMatrix::from_rows({{0, 2}, {3, 0}});
  const ConstraintSet c2 = pin_endpoints(w2, 1, 0);
  const BinaryMatrix& t = *c2.time;
  EXPECT_EQ(t(0, 0), 1);
  EXPECT_EQ(t(1, 0), 0);
  EXPECT_EQ(t(0, 1), 0);
  EXPECT_EQ(t(1, 1), 1);

  const CostMatrix w3 = tu::random_matrix(3, 7);
  const ConstraintSet c3 = pin_endpoints(w3, 2, 0);
  const TspProblem p(w3, c3);
  for (const Sequence& s : {Sequence{2, 1, 0}}) EXPECT_TRUE(violates_nothing(p, s));
  for (const Sequence& s : {Sequence{0, 1, 2}, Sequence{1, 2, 0}, Sequence{2, 0, 1}}) EXPECT_FALSE(violates_nothing(p, s));
  EXPECT_THROW(pin_endpoints(w3, 1, 1), std::invalid_argument);
}

TEST(PinEndpoints, qaoa_matches_exact_path) {
  const CostMatrix w = tu::random_matrix(3, 8);
  const auto exact = exact_path_tsp(w, 0, 2);
  const TspProblem p(w, pin_endpoints(w, 0, 2));
  const Extremes e = extremes(p, ExtremesMode::subspace);
  EXPECT_NEAR(e.c_opt, exact.cost, 1e-9);
  QaoaConfig qc;
  qc.shots = 50;
  qc.seed = 1;
  const auto r = run_qaoa(p, qc);
  EXPECT_EQ(r.best_sequence, exact.tour);
}

TEST(ClqConfig, validate) {
  ClqConfig c;
  c.n_max = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.n_max = 21;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.n_max = 9;
  c.backend = Backend::qaoa;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.n_max = 8;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(parse_backend("qaoa"), Backend::qaoa);
  EXPECT_EQ(parse_linkage("single"), Linkage::single);
  EXPECT_THROW(parse_linkage("ward"), std::invalid_argument);
}

TEST(ClQaoa, no_split_when_small) {
  const CostMatrix w = tu::random_matrix(5, 9);
  ClqConfig c;
  c.n_max = 5;
  const auto r = cl_qaoa_solve(w, c);
  EXPECT_NEAR(r.cost, exact_tsp(w, true).cost, 1e-9);
  EXPECT_EQ(r.qaoa_calls, 1);
  EXPECT_EQ(tree_depth(r.tree), 1);
}

TEST(ClQaoa, nmax_n_equals_exact) {
  const CostMatrix w = tu::random_matrix(20, 10);
  ClqConfig c;
  c.n_max = 20;
  EXPECT_NEAR(cl_qaoa_solve(w, c).cost, exact_tsp(w, true).cost, 1e-9);
}

TEST(ClQaoa, valid_tours_and_tree_shape) {
  for (int n : {6, 11, 25, 40}) {
    for (int nmax : {2, 3, 5}) {
      const CostMatrix w = tu::random_matrix(n, 100 + n);
      ClqConfig c;
      c.n_max = nmax;
      const auto r = cl_qaoa_solve(w, c);
      ASSERT_TRUE(is_permutation_of_n(r.tour, n)) << n << " " << nmax;
      EXPECT_NEAR(r.cost, route_cost(w, r.tour, true), 1e-9);
      for (const ClusterNode* leaf : tree_leaves(r.tree)) EXPECT_LE(static_cast<int>(leaf->members.size()), nmax);
      EXPECT_LE(tree_depth(r.tree), n);
      EXPECT_GE(r.qaoa_calls, 1);
    }
  }
}

TEST(ClQaoa, children_paths_respect_endpoints) {
  const CostMatrix w = blobs(4, 5, 2);
  ClqConfig c;
  c.n_max = 4;
  const auto r = cl_qaoa_solve(w, c);
  std::vector<const ClusterNode*> stack{&r.tree};
  while (!stack.empty()) {
    const ClusterNode* node = stack.back();
    stack.pop_back();
    EXPECT_EQ(node->solved_path.size(), node->members.size());
    if (node->depth > 0) {
      EXPECT_EQ(node->solved_path.front(), node->entry);
      EXPECT_EQ(node->solved_path.back(), node->exit);
    }
    for (const auto& ch : node->children) stack.push_back(&ch);
  }
}

TEST(ClQaoa, finds_blob_structure) {
  const CostMatrix w = blobs(4, 4, 3);
  ClqConfig c;
  c.n_max = 5;
  const auto r = cl_qaoa_solve(w, c);
  ASSERT_EQ(r.tree.children.size(), 4u);
  EXPECT_LE(tree_depth(r.tree), static_cast<int>(std::ceil(std::log(16.0) / std::log(5.0))) + 1);
  for (const auto& ch : r.tree.children) {
    EXPECT_EQ(ch.members.size(), 4u);
    EXPECT_EQ(ch.members.back() - ch.members.front(), 3);
  }
}

TEST(ClQaoa, bigger_nmax_does_not_hurt_on_average) {
  double small = 0, big = 0;
  for (std::uint64_t s = 0; s < 6; ++s) {
    const CostMatrix w = tu::random_matrix(24, 700 + s);
    ClqConfig c;
    c.n_max = 3;
    small += cl_qaoa_solve(w, c).cost;
    c.n_max = 12;
    big += cl_qaoa_solve(w, c).cost;
  }
  EXPECT_LE(big, small);
}

TEST(ClQaoa, deterministic) {
  const CostMatrix w = tu::random_matrix(18, 5);
  ClqConfig c;
  c.n_max = 4;
  c.backend = Backend::qaoa;
  c.qaoa.shots = 20;
  c.qaoa.max_iters = 15;
  c.seed = 11;
  const auto a = cl_qaoa_solve(w, c);
  const auto b = cl_qaoa_solve(w, c);
  EXPECT_EQ(a.tour, b.tour);
  EXPECT_EQ(a.qaoa_calls, b.qaoa_calls);
}

TEST(ClQaoa, qaoa_backend_gives_valid_tours) {
  const CostMatrix w = tu::random_matrix(14, 6);
  ClqConfig c;
  c.n_max = 4;
  c.backend = Backend::qaoa;
  c.qaoa.shots = 30;
  c.qaoa.max_iters = 20;
  const auto r = cl_qaoa_solve(w, c);
  EXPECT_TRUE(is_permutation_of_n(r.tour, 14));
  EXPECT_NEAR(r.cost, route_cost(w, r.tour, true), 1e-9);
}

TEST(ClQaoa, zero_matrix) {
  const CostMatrix w(Grid<double>(9, 9, 0.0));
  ClqConfig c;
  c.n_max = 3;
  c.backend = Backend::qaoa;
  c.qaoa.shots = 10;
  c.qaoa.max_iters = 5;
  const auto r = cl_qaoa_solve(w, c);
  EXPECT_TRUE(is_permutation_of_n(r.tour, 9));
  EXPECT_DOUBLE_EQ(r.cost, 0);
}
