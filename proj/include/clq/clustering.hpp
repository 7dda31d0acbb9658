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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clq/cost_model.hpp"
#include "clq/qaoa.hpp"

namespace clq {

enum class Linkage { average, complete, single };
enum class Backend { qaoa, exact };

Linkage parse_linkage(const std::string& s);
Backend parse_backend(const std::string& s);
std::string to_string(Linkage l);
std::string to_string(Backend b);

/// Agglomerative clustering on d_ij = (w_ij + w_ji) / 2, cut at k clusters.
/// Clusters are returned sorted by smallest member; members ascending.
std::vector<std::vector<int>> ahc_cluster(const CostMatrix& cost, int k, Linkage linkage = Linkage::average);

/// Member minimizing sum_j (w_ij + w_ji) over the cluster; ties to the smallest index.
int medoid(const std::vector<int>& members, const CostMatrix& cost);

/// Medoid-to-medoid costs in cluster order.
CostMatrix meta_matrix(const std::vector<std::vector<int>>& clusters, const CostMatrix& cost);

struct Transition {
  int exit_city;   // leaves cluster c
  int entry_city;  // enters cluster c + 1
};

/// Cheapest (exit, entry) pair for each consecutive cluster pair of a cyclic
/// order. Transition c joins cluster c to cluster (c + 1) mod k. A cluster
/// with two or more members never uses the same city for entry and exit.
std::vector<Transition> entry_exit(const std::vector<std::vector<int>>& ordered, const CostMatrix& cost);

struct Endpoints {
  int entry;
  int exit;
};

/// Per-cluster endpoints for an ordered sequence of clusters. With `cyclic`
/// the last cluster links back to the first; otherwise the first entry and
/// last exit are fixed to the given cities.
std::vector<Endpoints> plan_endpoints(const std::vector<std::vector<int>>& ordered, const CostMatrix& cost, bool cyclic,
                                      std::optional<int> first_entry = std::nullopt,
                                      std::optional<int> last_exit = std::nullopt);

/// Time-step matrix forcing `entry` at the first step and `exit` at the last
/// step of an m-city path (local indices).
ConstraintSet pin_endpoints(const CostMatrix& cost, int entry, int exit);

struct ClqConfig {
  int n_max = 5;
  Backend backend = Backend::exact;
  QaoaConfig qaoa;
  Linkage linkage = Linkage::average;
  std::uint64_t seed = 0;

  void validate() const;
};

struct ClusterNode {
  std::vector<int> members;
  int medoid = 0;
  std::vector<ClusterNode> children;
  std::vector<int> solved_path;
  int entry = 0;
  int exit = 0;
  int depth = 0;
};

struct ClqTimes {
  double cluster = 0, meta = 0, sub = 0, total = 0;  // milliseconds
};

struct ClqResult {
  Tour tour;
  double cost = 0;
  int qaoa_calls = 0;
  ClusterNode tree;
  ClqTimes wall_ms;
};

ClqResult cl_qaoa_solve(const CostMatrix& cost, const ClqConfig& config);

int tree_depth(const ClusterNode& node);
std::vector<const ClusterNode*> tree_leaves(const ClusterNode& node);

}  // namespace clq
