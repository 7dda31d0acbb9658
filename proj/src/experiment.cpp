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

#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "clq/metrics.hpp"
#include "clq/qubo.hpp"

namespace clq {

Dataset parse_dataset(const std::string& s) {
  if (s == "synthetic") return Dataset::synthetic;
  if (s == "matrix-file") return Dataset::matrix_file;
  if (s == "graph-file") return Dataset::graph_file;
  throw std::invalid_argument("unknown dataset '" + s + "' (expected synthetic|matrix-file|graph-file)");
}

Axis parse_axis(const std::string& s) {
  if (s == "shots") return Axis::shots;
  if (s == "depth") return Axis::depth;
  if (s == "nmax") return Axis::nmax;
  if (s == "size") return Axis::size;
  throw std::invalid_argument("unknown axis '" + s + "' (expected shots|depth|nmax|size)");
}

std::string to_string(Dataset d) {
  switch (d) {
    case Dataset::synthetic:
      return "synthetic";
    case Dataset::matrix_file:
      return "matrix-file";
    default:
      return "graph-file";
  }
}

std::string to_string(Axis a) {
  switch (a) {
    case Axis::shots:
      return "shots";
    case Axis::depth:
      return "depth";
    case Axis::nmax:
      return "nmax";
    default:
      return "size";
  }
}

ExtremesMode default_extremes_mode(int n) { return n <= kMaxFullExtremes ? ExtremesMode::full : ExtremesMode::subspace; }

namespace {

bool is_int(double v) { return std::isfinite(v) && v == std::floor(v); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("sweep spec: " + what);
}

}  // namespace

void SweepSpec::validate() const {
  require(!values.empty(), "'values' must be non-empty");
  require(runs >= 1, "'runs' must be >= 1");
  require(!constraints.empty(), "'constraints' must be non-empty");
  if (axis != Axis::size) {
    require(!n.empty(), "'n' must be non-empty");
    for (int x : n) require(x >= 2, "every n must be >= 2");
  }
  for (double v : values) require(is_int(v), "axis values must be integers");
  switch (axis) {
    case Axis::shots:
    case Axis::depth:
      for (double v : values) require(v >= 1, "shots/depth values must be >= 1");
      for (int x : n) require(subspace_size(x) <= kDefaultTableCap, "n=" + std::to_string(x) + " exceeds the simulator cap");
      break;
    case Axis::nmax:
      for (double v : values) require(v >= 2, "nmax values must be >= 2");
      break;
    case Axis::size:
      for (double v : values) require(v >= 3, "size values must be >= 3");
      break;
  }
  if (axis == Axis::nmax || axis == Axis::size)
    for (auto k : constraints) require(k == ConstraintKind::none, "cluster sweeps take no logistical constraints");
  require(p >= 1 && shots >= 1 && final_shots >= 0 && max_iters >= 1, "p, shots, max_iters must be >= 1");
  require(nmax >= 2, "'nmax' must be >= 2");
  if (dataset == Dataset::matrix_file) require(!matrix_path.empty(), "matrix-file dataset needs paths.matrix");
  if (dataset == Dataset::graph_file) require(!graph_path.empty() && !ranked_path.empty(), "graph-file dataset needs paths.graph and paths.ranked");
}

SweepSpec SweepSpec::from_json(const std::string& text, const std::string& origin) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(origin + ": invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw FormatError(origin + ": sweep spec must be a JSON object");
  SweepSpec s;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "dataset") s.dataset = parse_dataset(v.get<std::string>());
      else if (key == "n") s.n = v.get<std::vector<int>>();
      else if (key == "constraints") {
        s.constraints.clear();
        for (const auto& c : v) s.constraints.push_back(parse_constraint_kind(c.get<std::string>()));
      } else if (key == "axis") s.axis = parse_axis(v.get<std::string>());
      else if (key == "values") s.values = v.get<std::vector<double>>();
      else if (key == "runs") s.runs = v.get<int>();
      else if (key == "seed") s.seed = v.get<std::uint64_t>();
      else if (key == "backend") s.backend = parse_backend(v.get<std::string>());
      else if (key == "extremes_mode") s.extremes_mode = parse_extremes_mode(v.get<std::string>());
      else if (key == "p") s.p = v.get<int>();
      else if (key == "shots") s.shots = v.get<int>();
      else if (key == "final_shots") s.final_shots = v.get<int>();
      else if (key == "max_iters") s.max_iters = v.get<int>();
      else if (key == "objective") {
        const auto o = v.get<std::string>();
        if (o == "sampled") s.objective = ObjectiveMode::sampled;
        else if (o == "exact") s.objective = ObjectiveMode::exact;
        else throw std::invalid_argument("unknown objective '" + o + "' (expected sampled|exact)");
      } else if (key == "nmax") s.nmax = v.get<int>();
      else if (key == "aco_reference") s.aco_reference = v.get<bool>();
      else if (key == "paths") {
        for (const auto& [pk, pv] : v.items()) {
          if (pk == "matrix") s.matrix_path = pv.get<std::string>();
          else if (pk == "graph") s.graph_path = pv.get<std::string>();
          else if (pk == "ranked") s.ranked_path = pv.get<std::string>();
          else throw std::invalid_argument("unknown field 'paths." + pk + "'");
        }
      } else {
        throw std::invalid_argument("unknown field '" + key + "'");
      }
    }
    s.validate();
  } catch (const Json::exception& e) {
    throw FormatError(origin + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(origin + ": " + e.what());
  }
  return s;
}

CostMatrix make_instance(const SweepSpec& spec, int n, std::uint64_t instance_seed) {
  Rng rng(instance_seed);
  switch (spec.dataset) {
    case Dataset::synthetic:
      return gen_synthetic(n, rng);
    case Dataset::matrix_file: {
      const CostMatrix m = load_matrix(spec.matrix_path);
      if (n > m.n()) throw std::invalid_argument("matrix file has " + std::to_string(m.n()) + " cities, n=" + std::to_string(n) + " requested");
      if (n == m.n()) return m;
      std::vector<int> idx(m.n());
      std::iota(idx.begin(), idx.end(), 0);
      for (int i = 0; i < n; ++i) std::swap(idx[i], idx[i + uniform_index(rng, static_cast<std::uint64_t>(m.n() - i))]);
      idx.resize(n);
      return m.submatrix(idx);
    }
    default: {
      const WeightedDigraph g = graph_from_csv(read_file(spec.graph_path), spec.graph_path);
      const RankedNodes ranked = ranked_from_text(read_file(spec.ranked_path), spec.ranked_path);
      return graph_to_matrix(g, sample_top_subset(ranked, n, rng));
    }
  }
}

namespace {

using Clock = std::chrono::steady_clock;

std::string sequence_bits(const Sequence& seq, int n) { return bits_to_string(sequence_to_bits(seq, n)); }

struct Job {
  int cell;
  int run;
  int n;
  ConstraintKind kind;
  double value;
};

Json run_job(const SweepSpec& spec, const Job& job) {
  const std::uint64_t instance_id = stable_hash(0, {static_cast<std::uint64_t>(job.n), static_cast<std::uint64_t>(job.kind)});
  const auto run = static_cast<std::uint64_t>(job.run);
  const auto stream = [&](std::uint64_t k) { return stable_hash(spec.seed, {instance_id, run, k}); };
  const CostMatrix cost = make_instance(spec, job.n, stream(0));
  const int v = static_cast<int>(job.value);

  if (spec.axis == Axis::shots || spec.axis == Axis::depth) {
    Rng crng(stream(1));
    const ConstraintSet constraints = gen_constraints(job.kind, cost, crng);
    const TspProblem problem(cost, constraints);
    QaoaConfig qc;
    qc.p = spec.axis == Axis::depth ? v : spec.p;
    qc.shots = spec.axis == Axis::shots ? v : spec.shots;
    qc.final_shots = spec.final_shots;
    qc.max_iters = spec.max_iters;
    qc.objective = spec.objective;
    qc.seed = stream(2);
    const QaoaRunRecord rec = run_qaoa(problem, qc);
    const Extremes ex = extremes(problem, spec.extremes_mode.value_or(default_extremes_mode(job.n)));
    return qaoa_record_json("n" + std::to_string(job.n) + "-" + to_string(job.kind) + "-r" + std::to_string(job.run),
                            problem, qc, rec, &ex);
  }

  ClqConfig cc;
  cc.n_max = spec.axis == Axis::nmax ? v : spec.nmax;
  cc.backend = spec.backend;
  cc.qaoa.p = spec.p;
  cc.qaoa.shots = spec.shots;
  cc.qaoa.final_shots = spec.final_shots;
  cc.qaoa.max_iters = spec.max_iters;
  cc.qaoa.objective = spec.objective;
  cc.seed = stream(2);
  const ClqResult res = cl_qaoa_solve(cost, cc);
  Json r = clq_record_json(cost, cc, res);
  r.erase("tree");
  if (spec.aco_reference) {
    AcoConfig ac;
    ac.seed = stream(3);
    const auto t0 = Clock::now();
    const HeuristicResult aco = ant_colony(cost, ac);
    r["aco_cost"] = aco.cost;
    r["aco_wall_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    r["relative_ratio"] = relative_ratio(res.cost, aco.cost);
  }
  return r;
}

}  // namespace

std::vector<Json> run_experiment(const SweepSpec& spec, int threads) {
  spec.validate();
  std::vector<Job> jobs;
  int cell = 0;
  const std::vector<int> sizes = spec.axis == Axis::size ? std::vector<int>{0} : spec.n;
  for (int n : sizes) {
    for (auto kind : spec.constraints) {
      for (double value : spec.values) {
        for (int r = 0; r < spec.runs; ++r)
          jobs.push_back({cell, r, spec.axis == Axis::size ? static_cast<int>(value) : n, kind, value});
        ++cell;
      }
    }
  }

  std::vector<Json> out(jobs.size());
  const int workers = std::max(1, threads);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Job& job = jobs[i];
    Json r;
    try {
      r = run_job(spec, job);
      r["status"] = "ok";
    } catch (const std::exception& e) {
      r = Json::object();
      r["status"] = "error";
      r["error"] = e.what();
    }
    r["cell"] = job.cell;
    r["run"] = job.run;
    r["axis"] = to_string(spec.axis);
    r["axis_value"] = job.value;
    r["n"] = job.n;
    r["constraint"] = to_string(job.kind);
    r["dataset"] = to_string(spec.dataset);
    out[i] = std::move(r);
  }
  return out;
}

Json qaoa_record_json(const std::string& problem_id, const TspProblem& problem, const QaoaConfig& config,
                      const QaoaRunRecord& record, const Extremes* ex) {
  const int n = problem.n();
  Json r;
  r["problem_id"] = problem_id;
  r["n"] = n;
  r["p"] = config.p;
  r["s"] = config.shots;
  r["s_star"] = config.effective_final_shots();
  r["seed"] = config.seed;
  r["objective"] = config.objective == ObjectiveMode::exact ? "exact" : "sampled";
  r["best_cost"] = record.best_cost;
  r["best_sequence"] = sequence_bits(record.best_sequence, n);
  r["best_tour"] = record.best_sequence;
  r["final_expectation"] = record.final_expectation;
  r["iterations"] = record.iterations_used;
  r["converged"] = record.converged;
  r["params"] = {{"gammas", record.params.gammas}, {"betas", record.params.betas}};
  Json hist = Json::object();
  for (const auto& [idx, count] : record.shot_histogram) hist[sequence_bits(decode_sequence(idx, n), n)] = count;
  r["histogram"] = hist;
  r["wall_ms"] = {{"init", 1e3 * record.wall_times.init},
                  {"optimize", 1e3 * record.wall_times.optimize},
                  {"sample", 1e3 * record.wall_times.sample}};
  if (ex) {
    const ArRecord ar = approximation_ratios(record.final_expectation, record.best_cost, *ex);
    r["extremes_mode"] = to_string(ex->mode);
    r["c_opt"] = ar.c_opt;
    r["c_worst"] = ar.c_worst;
    r["ar_exp"] = ar.ar_exp;
    r["ar_min"] = ar.ar_min;
    r["degenerate"] = ar.degenerate;
  }
  return r;
}

Json baseline_record_json(const std::string& method, const CostMatrix& cost, std::uint64_t seed,
                          const HeuristicResult& result, double wall_ms) {
  return {{"method", method}, {"n", cost.n()}, {"seed", seed}, {"cost", result.cost}, {"tour", result.tour}, {"wall_ms", wall_ms}};
}

Json cluster_tree_json(const ClusterNode& node) {
  Json j = {{"members", node.members}, {"medoid", node.medoid}, {"entry", node.entry},
            {"exit", node.exit},       {"depth", node.depth},   {"path", node.solved_path}};
  Json kids = Json::array();
  for (const auto& c : node.children) kids.push_back(cluster_tree_json(c));
  j["children"] = kids;
  return j;
}

Json clq_record_json(const CostMatrix& cost, const ClqConfig& config, const ClqResult& result) {
  return {{"method", "cl-qaoa"},
          {"n", cost.n()},
          {"n_max", config.n_max},
          {"backend", to_string(config.backend)},
          {"linkage", to_string(config.linkage)},
          {"seed", config.seed},
          {"cost", result.cost},
          {"tour", result.tour},
          {"valid", is_permutation_of_n(result.tour, cost.n())},
          {"qaoa_calls", result.qaoa_calls},
          {"tree_depth", tree_depth(result.tree)},
          {"wall_ms",
           {{"cluster", result.wall_ms.cluster},
            {"meta", result.wall_ms.meta},
            {"sub", result.wall_ms.sub},
            {"total", result.wall_ms.total}}},
          {"tree", cluster_tree_json(result.tree)}};
}

std::string default_metric(Axis axis) {
  switch (axis) {
    case Axis::shots:
      return "ar_min";
    case Axis::depth:
      return "ar_exp";
    case Axis::nmax:
      return "relative_ratio";
    default:
      return "wall_ms.total";
  }
}

namespace {

std::optional<double> metric_of(const Json& r, const std::string& metric) {
  const Json* v = &r;
  std::size_t start = 0;
  while (true) {
    const auto dot = metric.find('.', start);
    const std::string key = metric.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (!v->is_object() || !v->contains(key)) return std::nullopt;
    v = &(*v)[key];
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (!v->is_number()) return std::nullopt;
  return v->get<double>();
}

using GroupKey = std::tuple<int, std::string, double>;

std::map<GroupKey, std::vector<double>> group(const std::vector<Json>& records, const std::string& metric) {
  std::map<GroupKey, std::vector<double>> g;
  for (const Json& r : records) {
    if (r.value("status", "ok") != "ok") continue;
    const auto v = metric_of(r, metric);
    if (!v) continue;
    g[{r.value("n", 0), r.value("constraint", "none"), r.value("axis_value", 0.0)}].push_back(*v);
  }
  return g;
}

std::string num(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace

std::string summarize(const std::vector<Json>& records, const std::string& metric) {
  std::string out = "n,constraint,axis_value,mean,median,std_err,median_se,count\n";
  for (const auto& [key, vals] : group(records, metric)) {
    const auto& [n, constraint, axis_value] = key;
    out += std::to_string(n) + "," + constraint + "," + num(axis_value) + "," + num(mean(vals)) + "," + num(median(vals)) +
           "," + num(std_err(vals)) + "," + num(median_std_err(vals)) + "," + std::to_string(vals.size()) + "\n";
  }
  return out;
}

std::string saturation_table(const std::vector<Json>& records, const std::string& metric) {
  std::map<std::pair<int, std::string>, std::vector<std::pair<double, double>>> curves;
  for (const auto& [key, vals] : group(records, metric)) {
    const auto& [n, constraint, p] = key;
    curves[{n, constraint}].push_back({p, median(vals)});
  }
  std::string out = "n,constraint,A,k,residual,converging,p_star_095\n";
  for (const auto& [key, pts] : curves) {
    out += std::to_string(key.first) + "," + key.second + ",";
    try {
      const FitResult f = fit_saturation(pts);
      out += num(f.A) + "," + num(f.k) + "," + num(f.residual) + "," + (f.converging ? "true" : "false") + ",";
      out += f.converging ? std::to_string(f.p_star(0.95)) : std::string("nan");
    } catch (const std::exception&) {
      out += "nan,nan,nan,false,nan";
    }
    out += "\n";
  }
  return out;
}

std::vector<Json> parse_records(const std::string& jsonl, const std::string& origin) {
  std::vector<Json> out;
  std::istringstream in(jsonl);
  std::size_t line = 0;
  for (std::string l; std::getline(in, l);) {
    ++line;
    if (l.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(l));
    } catch (const Json::parse_error& e) {
      throw FormatError(origin + ": line " + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
    }
  }
  return out;
}

}  // namespace clq
