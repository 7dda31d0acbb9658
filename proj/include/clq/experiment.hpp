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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clq/clustering.hpp"
#include "clq/heuristics.hpp"
#include "clq/io.hpp"
#include "clq/oracle.hpp"
#include "clq/qaoa.hpp"
#include "json.hpp"

namespace clq {

using Json = nlohmann::json;

enum class Dataset { synthetic, matrix_file, graph_file };
enum class Axis { shots, depth, nmax, size };

Dataset parse_dataset(const std::string& s);
Axis parse_axis(const std::string& s);
std::string to_string(Dataset d);
std::string to_string(Axis a);

/// Full-space extremes up to n = 5, subspace beyond.
ExtremesMode default_extremes_mode(int n);

struct SweepSpec {
  Dataset dataset = Dataset::synthetic;
  std::vector<int> n;                       // ignored by the size axis
  std::vector<ConstraintKind> constraints{ConstraintKind::none};
  Axis axis = Axis::shots;
  std::vector<double> values;
  int runs = 5;
  std::uint64_t seed = 0;
  Backend backend = Backend::exact;
  std::optional<ExtremesMode> extremes_mode;  // unset: default_extremes_mode(n)
  int p = 1;
  int shots = 100;
  int final_shots = 0;
  int max_iters = 200;
  ObjectiveMode objective = ObjectiveMode::sampled;
  int nmax = 5;
  bool aco_reference = true;
  std::string matrix_path, graph_path, ranked_path;

  void validate() const;
  static SweepSpec from_json(const std::string& text, const std::string& origin = "<string>");
};

/// Cost matrix for one (n, run) draw of the spec's dataset.
CostMatrix make_instance(const SweepSpec& spec, int n, std::uint64_t instance_seed);

/// One JSON object per (cell, run), ordered by (cell, run). Failing runs are
/// recorded with status "error" and the sweep continues. Cells run in parallel
/// when `threads` > 1.
std::vector<Json> run_experiment(const SweepSpec& spec, int threads = 1);

/// Record for a single QAOA run. `extremes` is optional; with it the record
/// carries ar_exp/ar_min.
Json qaoa_record_json(const std::string& problem_id, const TspProblem& problem, const QaoaConfig& config,
                      const QaoaRunRecord& record, const Extremes* extremes);

Json baseline_record_json(const std::string& method, const CostMatrix& cost, std::uint64_t seed,
                          const HeuristicResult& result, double wall_ms);

Json cluster_tree_json(const ClusterNode& node);
Json clq_record_json(const CostMatrix& cost, const ClqConfig& config, const ClqResult& result);

/// Metric reported for an axis when none is given.
std::string default_metric(Axis axis);

/// Groups ok records by (n, constraint, axis_value) and writes
/// n,constraint,axis_value,mean,median,std_err,median_se,count.
std::string summarize(const std::vector<Json>& records, const std::string& metric);

/// Saturation fits of the per-depth medians of `metric`, one row per
/// (n, constraint): n,constraint,A,k,residual,converging,p_star_095.
std::string saturation_table(const std::vector<Json>& records, const std::string& metric = "ar_exp");

std::vector<Json> parse_records(const std::string& jsonl, const std::string& origin = "<string>");

}  // namespace clq
