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

#include <omp.h>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "clq/clustering.hpp"
#include "clq/experiment.hpp"
#include "clq/heuristics.hpp"
#include "clq/io.hpp"
#include "clq/oracle.hpp"
#include "clq/qaoa.hpp"

namespace {

using namespace clq;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
  std::string extremes_mode;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty())
    std::cout << text;
  else
    write_file(g.out, text);
}

TspProblem load_problem(const std::string& matrix, const std::string& constraints) {
  ConstraintSet cs;
  if (!constraints.empty()) cs = load_constraints(constraints);
  return TspProblem(load_matrix(matrix), cs);
}

ExtremesMode extremes_mode_for(const Globals& g, int n) {
  return g.extremes_mode.empty() ? default_extremes_mode(n) : parse_extremes_mode(g.extremes_mode);
}

double ms_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained TSP with QAOA, clustering and classical baselines"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option values");
  Globals g;
  app.add_option("--seed", g.seed, "Root seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default: stdout)");
  app.add_option("--threads", g.threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--extremes-mode", g.extremes_mode, "full|subspace (default: full for n<=5)")
      ->check(CLI::IsMember({"full", "subspace"}));

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic matrix or a constraint file");
  int gen_n = 0;
  std::string gen_constraint, gen_matrix;
  gen->add_option("--n", gen_n, "Number of cities (matrix)")->check(CLI::Range(2, 100000));
  gen->add_option("--constraint", gen_constraint, "none|bnc|road|time: emit a constraint file instead")
      ->check(CLI::IsMember({"none", "bnc", "road", "time"}));
  gen->add_option("--matrix", gen_matrix, "Matrix the constraints are generated for")->check(CLI::ExistingFile);

  // solve
  auto* solve = app.add_subcommand("solve", "Single QAOA run");
  std::string matrix, constraints;
  int p = 1, shots = 100, final_shots = 0, max_iters = 200;
  std::string objective = "sampled";
  solve->add_option("--matrix", matrix, "Cost matrix (.json or .csv)")->required()->check(CLI::ExistingFile);
  solve->add_option("--constraints", constraints, "Constraint file (.json)")->check(CLI::ExistingFile);
  solve->add_option("--p", p, "Depth")->check(CLI::PositiveNumber);
  solve->add_option("--shots", shots, "Shots per evaluation")->check(CLI::PositiveNumber);
  solve->add_option("--final-shots", final_shots, "Final shots (0: same as --shots)")->check(CLI::NonNegativeNumber);
  solve->add_option("--max-iters", max_iters, "Optimizer evaluations")->check(CLI::PositiveNumber);
  solve->add_option("--objective", objective, "sampled|exact")->check(CLI::IsMember({"sampled", "exact"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exact optimum or cost extremes");
  std::string oracle_mode = "tsp";
  bool open_path = false;
  std::optional<int> entry, exit_city;
  oracle->add_option("--matrix", matrix, "Cost matrix")->required()->check(CLI::ExistingFile);
  oracle->add_option("--constraints", constraints, "Constraint file (extremes modes)")->check(CLI::ExistingFile);
  oracle->add_option("--mode", oracle_mode, "tsp|path|full|subspace")
      ->check(CLI::IsMember({"tsp", "path", "full", "subspace"}));
  oracle->add_flag("--open", open_path, "Open path instead of a cycle (tsp mode)");
  oracle->add_option("--entry", entry, "Path start (path mode)");
  oracle->add_option("--exit", exit_city, "Path end (path mode)");

  // baseline
  auto* baseline = app.add_subcommand("baseline", "Simulated annealing / ant colony");
  std::string method = "both";
  long iterations = 0;
  baseline->add_option("--matrix", matrix, "Cost matrix")->required()->check(CLI::ExistingFile);
  baseline->add_option("--method", method, "sa|aco|both")->check(CLI::IsMember({"sa", "aco", "both"}));
  baseline->add_option("--iterations", iterations, "Iterations (0: default schedule)")->check(CLI::NonNegativeNumber);

  // cluster-solve
  auto* cluster = app.add_subcommand("cluster-solve", "Cl-QAOA decomposition");
  int nmax = 5;
  std::string backend = "exact", linkage = "average";
  bool with_tree = true;
  cluster->add_option("--matrix", matrix, "Cost matrix")->required()->check(CLI::ExistingFile);
  cluster->add_option("--nmax", nmax, "Largest sub-problem")->check(CLI::Range(2, 20));
  cluster->add_option("--backend", backend, "qaoa|exact")->check(CLI::IsMember({"qaoa", "exact"}));
  cluster->add_option("--linkage", linkage, "average|complete|single")
      ->check(CLI::IsMember({"average", "complete", "single"}));
  cluster->add_option("--p", p, "QAOA depth")->check(CLI::PositiveNumber);
  cluster->add_option("--shots", shots, "QAOA shots")->check(CLI::PositiveNumber);
  cluster->add_option("--max-iters", max_iters, "QAOA optimizer evaluations")->check(CLI::PositiveNumber);
  cluster->add_flag("!--no-tree", with_tree, "Omit the decomposition tree");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run an experiment spec (JSON) and write JSON-line records");
  std::string spec_path, summary_path;
  sweep->add_option("spec", spec_path, "Sweep spec file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--summary", summary_path, "Also write the CSV summary here");

  // report
  auto* report = app.add_subcommand("report", "Aggregate JSON-line records into CSV");
  std::string records_path, metric, fit_path;
  report->add_option("records", records_path, "Records file")->required()->check(CLI::ExistingFile);
  report->add_option("--metric", metric, "Record field (dotted path), default per axis");
  report->add_option("--fit", fit_path, "Write saturation fits (depth axis) here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (g.threads > 0) omp_set_num_threads(g.threads);

    if (*gen) {
      if (!gen_constraint.empty()) {
        if (gen_matrix.empty()) throw CLI::RequiredError("--matrix");
        const CostMatrix m = load_matrix(gen_matrix);
        Rng rng(stable_hash(g.seed, {1}));
        emit(g, constraints_to_json(gen_constraints(parse_constraint_kind(gen_constraint), m, rng)));
      } else {
        if (gen_n == 0) throw CLI::RequiredError("--n");
        Rng rng(stable_hash(g.seed, {0}));
        const CostMatrix m = gen_synthetic(gen_n, rng);
        if (g.out.empty())
          std::cout << matrix_to_json(m);
        else
          save_matrix(g.out, m);
      }
    } else if (*solve) {
      const TspProblem problem = load_problem(matrix, constraints);
      QaoaConfig qc;
      qc.p = p;
      qc.shots = shots;
      qc.final_shots = final_shots;
      qc.max_iters = max_iters;
      qc.objective = objective == "exact" ? ObjectiveMode::exact : ObjectiveMode::sampled;
      qc.seed = g.seed;
      const QaoaRunRecord rec = run_qaoa(problem, qc);
      const Extremes ex = extremes(problem, extremes_mode_for(g, problem.n()));
      emit(g, qaoa_record_json(matrix, problem, qc, rec, &ex).dump() + "\n");
    } else if (*oracle) {
      Json r;
      if (oracle_mode == "tsp" || oracle_mode == "path") {
        const CostMatrix m = load_matrix(matrix);
        ExactSolution s;
        if (oracle_mode == "path") {
          if (!entry || !exit_city) throw CLI::RequiredError("--entry and --exit");
          s = exact_path_tsp(m, *entry, *exit_city);
        } else {
          s = exact_tsp(m, !open_path);
        }
        r = {{"mode", oracle_mode}, {"closed", oracle_mode == "tsp" && !open_path}, {"cost", s.cost}, {"tour", s.tour}};
      } else {
        const TspProblem problem = load_problem(matrix, constraints);
        const Extremes ex = extremes(problem, parse_extremes_mode(oracle_mode));
        r = {{"mode", oracle_mode}, {"c_opt", ex.c_opt}, {"c_worst", ex.c_worst}, {"opt_sequence", ex.opt_sequence}};
      }
      emit(g, r.dump() + "\n");
    } else if (*baseline) {
      const CostMatrix m = load_matrix(matrix);
      std::string text;
      if (method != "aco") {
        SaConfig sc;
        sc.iterations = iterations;
        sc.seed = stable_hash(g.seed, {0});
        const auto t = std::chrono::steady_clock::now();
        const HeuristicResult res = simulated_annealing(m, sc);
        text += baseline_record_json("sa", m, sc.seed, res, ms_since(t)).dump() + "\n";
      }
      if (method != "sa") {
        AcoConfig ac;
        ac.iterations = static_cast<int>(iterations);
        ac.seed = stable_hash(g.seed, {1});
        const auto t = std::chrono::steady_clock::now();
        const HeuristicResult res = ant_colony(m, ac);
        text += baseline_record_json("aco", m, ac.seed, res, ms_since(t)).dump() + "\n";
      }
      emit(g, text);
    } else if (*cluster) {
      const CostMatrix m = load_matrix(matrix);
      ClqConfig cc;
      cc.n_max = nmax;
      cc.backend = parse_backend(backend);
      cc.linkage = parse_linkage(linkage);
      cc.qaoa.p = p;
      cc.qaoa.shots = shots;
      cc.qaoa.max_iters = max_iters;
      cc.seed = g.seed;
      Json r = clq_record_json(m, cc, cl_qaoa_solve(m, cc));
      if (!with_tree) r.erase("tree");
      emit(g, r.dump() + "\n");
    } else if (*sweep) {
      SweepSpec spec = SweepSpec::from_json(read_file(spec_path), spec_path);
      if (app.get_option("--seed")->count() > 0) spec.seed = g.seed;
      if (!g.extremes_mode.empty()) spec.extremes_mode = parse_extremes_mode(g.extremes_mode);
      const auto records = run_experiment(spec, g.threads > 0 ? g.threads : omp_get_max_threads());
      std::string text;
      int failed = 0;
      for (const auto& r : records) {
        text += r.dump() + "\n";
        failed += r["status"] != "ok";
      }
      emit(g, text);
      if (!summary_path.empty()) write_file(summary_path, summarize(records, default_metric(spec.axis)));
      if (failed) std::cerr << failed << " of " << records.size() << " runs failed\n";
    } else if (*report) {
      const auto records = parse_records(read_file(records_path), records_path);
      std::string m = metric;
      if (m.empty()) {
        if (records.empty() || !records.front().contains("axis"))
          throw std::invalid_argument("report: records carry no axis; pass --metric");
        m = default_metric(parse_axis(records.front()["axis"].get<std::string>()));
      }
      emit(g, summarize(records, m));
      if (!fit_path.empty()) write_file(fit_path, saturation_table(records, m));
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
