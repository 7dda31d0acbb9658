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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "clq/oracle.hpp"

namespace clq {

Linkage parse_linkage(const std::string& s) {
  if (s == "average") return Linkage::average;
  if (s == "complete") return Linkage::complete;
  if (s == "single") return Linkage::single;
  throw std::invalid_argument("unknown linkage '" + s + "' (expected average|complete|single)");
}

Backend parse_backend(const std::string& s) {
  if (s == "qaoa") return Backend::qaoa;
  if (s == "exact") return Backend::exact;
  throw std::invalid_argument("unknown backend '" + s + "' (expected qaoa|exact)");
}

std::string to_string(Linkage l) {
  switch (l) {
    case Linkage::average:
      return "average";
    case Linkage::complete:
      return "complete";
    default:
      return "single";
  }
}

std::string to_string(Backend b) { return b == Backend::qaoa ? "qaoa" : "exact"; }

std::vector<std::vector<int>> ahc_cluster(const CostMatrix& cost, int k, Linkage linkage) {
  const int n = cost.n();
  if (k < 1 || k > n) throw std::invalid_argument("ahc_cluster: need 1 <= k <= n");
  // Cluster ids equal their smallest member, so scanning pairs in id order
  // breaks distance ties towards the smallest members.
  Grid<double> d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = 0.5 * (cost(i, j) + cost(j, i));
  std::vector<std::vector<int>> members(n);
  for (int i = 0; i < n; ++i) members[i] = {i};
  std::vector<char> active(n, 1);

  for (int clusters = n; clusters > k; --clusters) {
    int ba = -1, bb = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (int b = a + 1; b < n; ++b) {
        if (active[b] && d(a, b) < best) {
          best = d(a, b);
          ba = a;
          bb = b;
        }
      }
    }
    const double sa = static_cast<double>(members[ba].size()), sb = static_cast<double>(members[bb].size());
    for (int c = 0; c < n; ++c) {
      if (!active[c] || c == ba || c == bb) continue;
      double v;
      switch (linkage) {
        case Linkage::average:
          v = (sa * d(ba, c) + sb * d(bb, c)) / (sa + sb);
          break;
        case Linkage::complete:
          v = std::max(d(ba, c), d(bb, c));
          break;
        default:
          v = std::min(d(ba, c), d(bb, c));
      }
      d(ba, c) = d(c, ba) = v;
    }
    members[ba].insert(members[ba].end(), members[bb].begin(), members[bb].end());
    std::sort(members[ba].begin(), members[ba].end());
    members[bb].clear();
    active[bb] = 0;
  }
  std::vector<std::vector<int>> out;
  for (int a = 0; a < n; ++a)
    if (active[a]) out.push_back(members[a]);
  return out;
}

int medoid(const std::vector<int>& members, const CostMatrix& cost) {
  if (members.empty()) throw std::invalid_argument("medoid: empty cluster");
  int best = -1;
  double best_sum = std::numeric_limits<double>::infinity();
  for (int i : members) {
    double s = 0;
    for (int j : members) s += cost(i, j) + cost(j, i);
    if (s < best_sum || (s == best_sum && i < best)) {
      best_sum = s;
      best = i;
    }
  }
  return best;
}

CostMatrix meta_matrix(const std::vector<std::vector<int>>& clusters, const CostMatrix& cost) {
  if (clusters.size() < 2) throw std::invalid_argument("meta_matrix: need at least 2 clusters");
  std::vector<int> medoids;
  for (const auto& c : clusters) medoids.push_back(medoid(c, cost));
  return cost.submatrix(medoids);
}

namespace {

struct Pair {
  int u, v;
};

Pair cheapest_pair(const std::vector<int>& from, const std::vector<int>& to, const CostMatrix& cost, int skip_u,
                   int skip_v) {
  Pair best{-1, -1};
  double bc = std::numeric_limits<double>::infinity();
  for (int u : from) {
    if (u == skip_u) continue;
    for (int v : to) {
      if (v == skip_v) continue;
      if (cost(u, v) < bc) {
        bc = cost(u, v);
        best = {u, v};
      }
    }
  }
  return best;
}

}  // namespace

std::vector<Endpoints> plan_endpoints(const std::vector<std::vector<int>>& ordered, const CostMatrix& cost, bool cyclic,
                                      std::optional<int> first_entry, std::optional<int> last_exit) {
  const int k = static_cast<int>(ordered.size());
  if (k == 0) throw std::invalid_argument("plan_endpoints: no clusters");
  for (const auto& c : ordered)
    if (c.empty()) throw std::invalid_argument("plan_endpoints: empty cluster");
  std::vector<Endpoints> ends(k, {-1, -1});

  if (cyclic) {
    if (k < 2) throw std::invalid_argument("plan_endpoints: cyclic order needs >= 2 clusters");
    for (int c = 0; c < k; ++c) {
      const int next = (c + 1) % k;
      const Pair p = cheapest_pair(ordered[c], ordered[next], cost, -1, -1);
      ends[c].exit = p.u;
      ends[next].entry = p.v;
    }
    for (int c = 0; c < k; ++c) {
      if (ordered[c].size() >= 2 && ends[c].entry == ends[c].exit) {
        const int target = ends[(c + 1) % k].entry;
        ends[c].exit = cheapest_pair(ordered[c], {target}, cost, ends[c].entry, -1).u;
      }
    }
    return ends;
  }

  if (!first_entry || !last_exit) throw std::invalid_argument("plan_endpoints: path order needs fixed endpoints");
  ends[0].entry = *first_entry;
  ends[k - 1].exit = *last_exit;
  for (int c = 0; c + 1 < k; ++c) {
    const int skip_u = ordered[c].size() >= 2 ? ends[c].entry : -1;
    const int skip_v = (c + 1 == k - 1 && ordered[c + 1].size() >= 2) ? *last_exit : -1;
    const Pair p = cheapest_pair(ordered[c], ordered[c + 1], cost, skip_u, skip_v);
    ends[c].exit = p.u;
    ends[c + 1].entry = p.v;
  }
  return ends;
}

std::vector<Transition> entry_exit(const std::vector<std::vector<int>>& ordered, const CostMatrix& cost) {
  const auto ends = plan_endpoints(ordered, cost, true);
  std::vector<Transition> out;
  const int k = static_cast<int>(ordered.size());
  for (int c = 0; c < k; ++c) out.push_back({ends[c].exit, ends[(c + 1) % k].entry});
  return out;
}

ConstraintSet pin_endpoints(const CostMatrix& cost, int entry, int exit) {
  const int m = cost.n();
  if (entry < 0 || entry >= m || exit < 0 || exit >= m || entry == exit)
    throw std::invalid_argument("pin_endpoints: invalid endpoints");
  BinaryMatrix t(m, m, 0);
  for (int i = 0; i < m; ++i) {
    if (i != entry) t(i, 0) = 1;
    if (i != exit) t(i, m - 1) = 1;
  }
  for (int s = 0; s < m; ++s) {
    if (s != 0) t(entry, s) = 1;
    if (s != m - 1) t(exit, s) = 1;
  }
  ConstraintSet cs;
  cs.time = std::move(t);
  cs.lambda.time = default_penalty_weight(cost);
  return cs;
}

void ClqConfig::validate() const {
  if (n_max < 2) throw std::invalid_argument("ClqConfig: n_max must be >= 2");
  if (backend == Backend::exact && n_max > kMaxHeldKarp)
    throw std::invalid_argument("ClqConfig: exact backend supports n_max <= " + std::to_string(kMaxHeldKarp));
  if (backend == Backend::qaoa) {
    if (n_max > 8) throw std::invalid_argument("ClqConfig: qaoa backend supports n_max <= 8");
    qaoa.validate();
  }
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

// Valid permutation that keeps the sampled order where possible.
Tour repair(const Sequence& seq, int m, int first, int last) {
  std::vector<char> used(m, 0);
  Tour out{first};
  used[first] = 1;
  if (last >= 0) used[last] = 1;
  for (int c : seq) {
    if (!used[c]) {
      used[c] = 1;
      out.push_back(c);
    }
  }
  for (int c = 0; c < m; ++c)
    if (!used[c]) out.push_back(c);
  if (last >= 0) out.push_back(last);
  return out;
}

class Solver {
 public:
  Solver(const CostMatrix& cost, const ClqConfig& cfg) : cost_(cost), cfg_(cfg) {}

  int calls() const { return calls_; }
  ClqTimes times;

  ClusterNode solve_top() {
    const int n = cost_.n();
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    if (n <= cfg_.n_max) {
      ClusterNode node = leaf(all, 0);
      const auto t = Clock::now();
      const Tour local = closed_order(cost_);
      times.sub += ms_since(t);
      node.solved_path = local;
      node.entry = local.front();
      node.exit = local.back();
      return node;
    }
    return split(all, std::nullopt, std::nullopt, 0);
  }

 private:
  ClusterNode leaf(const std::vector<int>& members, int depth) const {
    ClusterNode node;
    node.members = members;
    node.medoid = medoid(members, cost_);
    node.depth = depth;
    return node;
  }

  ClusterNode solve_group(const std::vector<int>& members, int entry, int exit, int depth) {
    const int m = static_cast<int>(members.size());
    if (m > cfg_.n_max) return split(members, entry, exit, depth);
    ClusterNode node = leaf(members, depth);
    node.entry = entry;
    node.exit = exit;
    if (m == 1) {
      node.solved_path = {entry};
      return node;
    }
    const auto t = Clock::now();
    const auto local_of = [&](int city) {
      return static_cast<int>(std::find(members.begin(), members.end(), city) - members.begin());
    };
    const Tour local = path_order(cost_.submatrix(members), local_of(entry), local_of(exit));
    for (int c : local) node.solved_path.push_back(members[c]);
    times.sub += ms_since(t);
    return node;
  }

  // Recursive step for a group larger than n_max. A closed cycle when no
  // endpoints are given, otherwise a path from entry to exit.
  ClusterNode split(const std::vector<int>& members, std::optional<int> entry, std::optional<int> exit, int depth) {
    const auto t0 = Clock::now();
    const int m = static_cast<int>(members.size());
    const bool cyclic = !entry.has_value();
    const int k = std::clamp((m + cfg_.n_max - 1) / cfg_.n_max, 2, cfg_.n_max);
    std::vector<std::vector<int>> groups = cluster(members, k);
    if (!cyclic) {
      auto holder = [&](int city) {
        return std::find_if(groups.begin(), groups.end(),
                            [&](const auto& g) { return std::binary_search(g.begin(), g.end(), city); });
      };
      if (holder(*entry) == holder(*exit)) {
        // Keep the path endpoints in different groups.
        std::vector<int> rest;
        for (int c : members)
          if (c != *exit) rest.push_back(c);
        groups = k - 1 >= 2 ? cluster(rest, k - 1) : std::vector<std::vector<int>>{rest};
        groups.push_back({*exit});
      }
    }
    const CostMatrix meta = meta_matrix(groups, cost_);
    times.cluster += ms_since(t0);

    const auto t1 = Clock::now();
    Tour order;
    if (cyclic) {
      order = closed_order(meta);
    } else {
      int ge = -1, gx = -1;
      for (int g = 0; g < static_cast<int>(groups.size()); ++g) {
        if (std::binary_search(groups[g].begin(), groups[g].end(), *entry)) ge = g;
        if (std::binary_search(groups[g].begin(), groups[g].end(), *exit)) gx = g;
      }
      order = path_order(meta, ge, gx);
    }
    times.meta += ms_since(t1);

    std::vector<std::vector<int>> ordered;
    for (int g : order) ordered.push_back(groups[g]);
    const auto ends = plan_endpoints(ordered, cost_, cyclic, entry, exit);

    ClusterNode node = leaf(members, depth);
    for (std::size_t c = 0; c < ordered.size(); ++c) {
      node.children.push_back(solve_group(ordered[c], ends[c].entry, ends[c].exit, depth + 1));
      const auto& p = node.children.back().solved_path;
      node.solved_path.insert(node.solved_path.end(), p.begin(), p.end());
    }
    node.entry = node.solved_path.front();
    node.exit = node.solved_path.back();
    return node;
  }

  std::vector<std::vector<int>> cluster(const std::vector<int>& members, int k) const {
    auto local = ahc_cluster(cost_.submatrix(members), k, cfg_.linkage);
    for (auto& g : local) {
      for (int& c : g) c = members[c];
      std::sort(g.begin(), g.end());
    }
    return local;
  }

  QaoaRunRecord run_backend_qaoa(const TspProblem& problem) {
    QaoaConfig qc = cfg_.qaoa;
    qc.seed = stable_hash(cfg_.seed, {static_cast<std::uint64_t>(calls_)});
    return run_qaoa(problem, qc);
  }

  static ConstraintSet with_default_weights(ConstraintSet cs, const CostMatrix& local) {
    if (!(default_penalty_weight(local) > 0)) {
      cs.lambda.p = 1.0;
      cs.lambda.time = 1.0;
    }
    return cs;
  }

  Tour closed_order(const CostMatrix& local) {
    ++calls_;
    const int m = local.n();
    if (cfg_.backend == Backend::exact) return exact_tsp(local, true).tour;
    // Pin city 0 to the first step and charge the closing edge on the last.
    BinaryMatrix t(m, m, 0);
    for (int i = 1; i < m; ++i) t(i, 0) = 1;
    for (int s = 1; s < m; ++s) t(0, s) = 1;
    Grid<double> bias(m, m, 0.0);
    for (int i = 0; i < m; ++i) bias(i, m - 1) = local(i, 0);
    ConstraintSet cs;
    cs.time = std::move(t);
    const TspProblem problem(local, with_default_weights(cs, local), {}, std::move(bias));
    return repair(run_backend_qaoa(problem).best_sequence, m, 0, -1);
  }

  Tour path_order(const CostMatrix& local, int entry, int exit) {
    ++calls_;
    if (cfg_.backend == Backend::exact) return exact_path_tsp(local, entry, exit).tour;
    const TspProblem problem(local, with_default_weights(pin_endpoints(local, entry, exit), local));
    return repair(run_backend_qaoa(problem).best_sequence, local.n(), entry, exit);
  }

  const CostMatrix& cost_;
  const ClqConfig& cfg_;
  int calls_ = 0;
};

}  // namespace

ClqResult cl_qaoa_solve(const CostMatrix& cost, const ClqConfig& config) {
  config.validate();
  const auto t0 = Clock::now();
  Solver solver(cost, config);
  ClqResult res;
  res.tree = solver.solve_top();
  res.tour = res.tree.solved_path;
  if (!is_permutation_of_n(res.tour, cost.n())) throw std::logic_error("cl_qaoa_solve: assembled tour is not a permutation");
  res.cost = route_cost(cost, res.tour, true);
  res.qaoa_calls = solver.calls();
  res.wall_ms = solver.times;
  res.wall_ms.total = ms_since(t0);
  return res;
}

int tree_depth(const ClusterNode& node) {
  int d = 0;
  for (const auto& c : node.children) d = std::max(d, tree_depth(c));
  return d + 1;
}

std::vector<const ClusterNode*> tree_leaves(const ClusterNode& node) {
  if (node.children.empty()) return {&node};
  std::vector<const ClusterNode*> out;
  for (const auto& c : node.children) {
    auto l = tree_leaves(c);
    out.insert(out.end(), l.begin(), l.end());
  }
  return out;
}

}  // namespace clq
