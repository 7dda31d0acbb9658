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

#include <filesystem>
#include <string>
#include <vector>

#include "clq/cost_model.hpp"
#include "clq/rng.hpp"

namespace clq {

/// Raised for malformed input files; the message carries file/line/field context.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  int u = 0, v = 0;
  double length_m = 0;
  double maxspeed_kmh = 0;
};

struct WeightedDigraph {
  int nodes = 0;
  std::vector<Edge> edges;

  void validate() const;
};

/// Nodes by traffic rank, most frequented first.
using RankedNodes = std::vector<int>;

/// Off-diagonal entries i.i.d. uniform on [0, 10]; zero diagonal.
CostMatrix gen_synthetic(int n, Rng& rng);

/// Shortest travel times in seconds between the selected nodes, with edge
/// weights length_m / (maxspeed_kmh / 3.6).
CostMatrix graph_to_matrix(const WeightedDigraph& graph, const std::vector<int>& nodes);

/// Uniform sample without replacement of n nodes from the first 2n ranks.
std::vector<int> sample_top_subset(const RankedNodes& ranked, int n, Rng& rng);

enum class ConstraintKind { none, bnc, road, time };
ConstraintKind parse_constraint_kind(const std::string& s);
std::string to_string(ConstraintKind k);

inline constexpr double kConstraintDensity = 0.2;
inline constexpr int kMaxFeasibilityCheck = 10;

/// Random instance of one constraint family: balanced categories for BNC,
/// density-0.2 forbidden entries for road/time. Instances without a
/// feasible sequence are redrawn (n <= 10).
ConstraintSet gen_constraints(ConstraintKind kind, const CostMatrix& cost, Rng& rng);

/// True when some permutation violates nothing. Exhaustive; n <= 10.
bool admits_feasible_tour(const CostMatrix& cost, const ConstraintSet& constraints);

// Persistence. JSON numbers use shortest round-trip formatting.
std::string matrix_to_json(const CostMatrix& m);
CostMatrix matrix_from_json(const std::string& text, const std::string& origin = "<string>");
std::string matrix_to_csv(const CostMatrix& m);
CostMatrix matrix_from_csv(const std::string& text, const std::string& origin = "<string>");

std::string constraints_to_json(const ConstraintSet& c);
ConstraintSet constraints_from_json(const std::string& text, const std::string& origin = "<string>");

std::string graph_to_csv(const WeightedDigraph& g);
WeightedDigraph graph_from_csv(const std::string& text, const std::string& origin = "<string>");
RankedNodes ranked_from_text(const std::string& text, const std::string& origin = "<string>");

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// Dispatches on extension: .csv is CSV, anything else JSON.
CostMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const CostMatrix& m);
ConstraintSet load_constraints(const std::filesystem::path& path);

}  // namespace clq
