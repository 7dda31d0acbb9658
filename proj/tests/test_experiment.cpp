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

#include "clq/experiment.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "clq/metrics.hpp"

using namespace clq;

namespace {

// Drops fields that legitimately differ between identical runs.
Json strip(Json r) {
  r.erase("cell");
  r.erase("axis_value");
  r.erase("wall_ms");
  r.erase("aco_wall_ms");
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) f.push_back(cell);
    rows.push_back(f);
  }
  return rows;
}

}  // namespace

TEST(SweepSpec, parse) {
  const SweepSpec s = SweepSpec::from_json(R"({
    "dataset": "synthetic", "n": [3, 4], "constraints": ["none", "bnc"],
    "axis": "depth", "values": [1, 2, 3], "runs": 2, "seed": 9,
    "extremes_mode": "full", "objective": "exact", "shots": 50
  })");
  EXPECT_EQ(s.dataset, Dataset::synthetic);
  EXPECT_EQ(s.n, (std::vector<int>{3, 4}));
  EXPECT_EQ(s.constraints, (std::vector<ConstraintKind>{ConstraintKind::none, ConstraintKind::bnc}));
  EXPECT_EQ(s.axis, Axis::depth);
  EXPECT_EQ(s.values.size(), 3u);
  EXPECT_EQ(s.runs, 2);
  EXPECT_EQ(s.seed, 9u);
  EXPECT_EQ(s.extremes_mode, ExtremesMode::full);
  EXPECT_EQ(s.objective, ObjectiveMode::exact);
  EXPECT_EQ(s.shots, 50);
}

TEST(SweepSpec, errors) {
  EXPECT_THROW(SweepSpec::from_json("{\"axis\": \"width\"}"), FormatError);
  EXPECT_THROW(SweepSpec::from_json("{\"colour\": 1}"), FormatError);
  EXPECT_THROW(SweepSpec::from_json("[1, 2]"), FormatError);
  EXPECT_THROW(SweepSpec::from_json("{\"n\": [3], \"axis\": \"shots\""), FormatError);
  SweepSpec s;
  s.axis = Axis::nmax;
  s.n = {10};
  s.values = {3};
  s.constraints = {ConstraintKind::time};
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Experiment, default_extremes_and_metric) {
  EXPECT_EQ(default_extremes_mode(5), ExtremesMode::full);
  EXPECT_EQ(default_extremes_mode(6), ExtremesMode::subspace);
  EXPECT_EQ(default_metric(Axis::shots), "ar_min");
  EXPECT_EQ(default_metric(Axis::depth), "ar_exp");
  EXPECT_EQ(default_metric(Axis::nmax), "relative_ratio");
}

TEST(Experiment, duplicated_depth_values_give_identical_records) {
  SweepSpec s;
  s.n = {3};
  s.axis = Axis::depth;
  s.values = {1, 1};
  s.runs = 2;
  s.shots = 30;
  s.max_iters = 20;
  s.seed = 4;
  const auto r = run_experiment(s);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(strip(r[0]), strip(r[2]));
  EXPECT_EQ(strip(r[1]), strip(r[3]));
  EXPECT_NE(strip(r[0]), strip(r[1]));
}

TEST(Experiment, shot_sweep_small_instance) {
  SweepSpec s;
  s.n = {3};
  s.axis = Axis::shots;
  s.values = {10, 100};
  s.runs = 5;
  s.seed = 1;
  const auto r = run_experiment(s, 2);
  ASSERT_EQ(r.size(), 10u);
  for (const auto& rec : r) {
    ASSERT_EQ(rec["status"], "ok") << rec.dump();
    EXPECT_EQ(rec["n"], 3);
    EXPECT_EQ(rec["extremes_mode"], "full");
    EXPECT_GE(rec["ar_min"].get<double>(), 0);
    EXPECT_LE(rec["ar_min"].get<double>(), 1 + 1e-12);
    EXPECT_TRUE(rec.contains("histogram"));
  }
  const auto table = csv_rows(summarize(r, "ar_min"));
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table[0][0], "n");
  EXPECT_EQ(table[1][2], "10");
  EXPECT_EQ(table[1][7], "5");
}

TEST(Experiment, threads_do_not_change_records) {
  SweepSpec s;
  s.n = {3};
  s.constraints = {ConstraintKind::none, ConstraintKind::time};
  s.axis = Axis::shots;
  s.values = {20};
  s.runs = 3;
  s.max_iters = 15;
  const auto a = run_experiment(s, 1);
  const auto b = run_experiment(s, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(strip(a[i]), strip(b[i]));
}

TEST(Experiment, cluster_sweep_exact_matches_or_beats_aco) {
  SweepSpec s;
  s.n = {20};
  s.axis = Axis::nmax;
  s.values = {20};
  s.runs = 2;
  const auto r = run_experiment(s);
  ASSERT_EQ(r.size(), 2u);
  for (const auto& rec : r) {
    ASSERT_EQ(rec["status"], "ok") << rec.dump();
    EXPECT_LE(rec["relative_ratio"].get<double>(), 1 + 1e-12);
    EXPECT_TRUE(rec["valid"].get<bool>());
  }
}

TEST(Experiment, failures_are_recorded) {
  SweepSpec s;
  s.dataset = Dataset::matrix_file;
  s.matrix_path = "/nonexistent/m.json";
  s.n = {3};
  s.values = {10};
  s.runs = 2;
  const auto r = run_experiment(s);
  ASSERT_EQ(r.size(), 2u);
  for (const auto& rec : r) {
    EXPECT_EQ(rec["status"], "error");
    EXPECT_TRUE(rec.contains("error"));
  }
  EXPECT_EQ(csv_rows(summarize(r, "ar_min")).size(), 1u);
}

TEST(Report, summarize_values) {
  std::vector<Json> recs;
  for (double v : {0.2, 0.4, 0.9})
    recs.push_back({{"status", "ok"}, {"n", 4}, {"constraint", "none"}, {"axis_value", 2}, {"wall_ms", {{"total", v}}}});
  const auto rows = csv_rows(summarize(recs, "wall_ms.total"));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][3]), 0.5, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][4]), 0.4, 1e-12);
  EXPECT_NEAR(std::stod(rows[1][5]), std_err({0.2, 0.4, 0.9}), 1e-12);
  EXPECT_EQ(rows[1][7], "3");
}

TEST(Report, saturation_table) {
  std::vector<Json> recs;
  for (int p = 1; p <= 6; ++p)
    recs.push_back({{"status", "ok"}, {"n", 3}, {"constraint", "none"}, {"axis_value", p},
                    {"ar_exp", 1 - 0.5 * std::exp(-1.0 * p)}});
  const auto rows = csv_rows(saturation_table(recs));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][2]), 0.5, 1e-6);
  EXPECT_NEAR(std::stod(rows[1][3]), 1.0, 1e-6);
  EXPECT_EQ(rows[1][5], "true");
  EXPECT_EQ(rows[1][6], "3");
}

TEST(Report, parse_records) {
  const auto r = parse_records("{\"a\": 1}\n\n{\"a\": 2}\n");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[1]["a"], 2);
  EXPECT_THROW(parse_records("{\"a\": 1}\n{oops\n", "r.jsonl"), FormatError);
}
