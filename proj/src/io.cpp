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

#include "clq/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "json.hpp"

namespace clq {

using nlohmann::json;

void WeightedDigraph::validate() const {
  if (nodes < 1) throw std::invalid_argument("graph: no nodes");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& x = edges[e];
    if (x.u < 0 || x.u >= nodes || x.v < 0 || x.v >= nodes)
      throw std::invalid_argument("graph: edge " + std::to_string(e) + " has an endpoint out of range");
    if (!(x.length_m > 0) || !(x.maxspeed_kmh > 0))
      throw std::invalid_argument("graph: edge " + std::to_string(e) + " needs positive length and speed");
  }
}

CostMatrix gen_synthetic(int n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("gen_synthetic: n must be >= 2");
  Grid<double> g(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) g(i, j) = 10.0 * uniform01(rng);
  return CostMatrix(std::move(g));
}

CostMatrix graph_to_matrix(const WeightedDigraph& graph, const std::vector<int>& nodes) {
  graph.validate();
  const int n = static_cast<int>(nodes.size());
  if (n < 2) throw std::invalid_argument("graph_to_matrix: need at least 2 nodes");
  for (int v : nodes)
    if (v < 0 || v >= graph.nodes) throw std::invalid_argument("graph_to_matrix: node " + std::to_string(v) + " not in graph");

  std::vector<std::vector<std::pair<int, double>>> adj(graph.nodes);
  for (const Edge& e : graph.edges) adj[e.u].push_back({e.v, e.length_m / (e.maxspeed_kmh / 3.6)});

  constexpr double inf = std::numeric_limits<double>::infinity();
  Grid<double> out(n, n, 0.0);
  std::vector<double> dist(graph.nodes);
  using Item = std::pair<double, int>;
  for (int a = 0; a < n; ++a) {
    std::fill(dist.begin(), dist.end(), inf);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[nodes[a]] = 0;
    pq.push({0.0, nodes[a]});
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj[u]) {
        if (d + w < dist[v]) {
          dist[v] = d + w;
          pq.push({dist[v], v});
        }
      }
    }
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      if (dist[nodes[b]] == inf)
        throw std::runtime_error("graph_to_matrix: node " + std::to_string(nodes[b]) + " is unreachable from node " +
                                 std::to_string(nodes[a]));
      out(a, b) = dist[nodes[b]];
    }
  }
  return CostMatrix(std::move(out));
}

std::vector<int> sample_top_subset(const RankedNodes& ranked, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("sample_top_subset: n must be >= 1");
  if (static_cast<int>(ranked.size()) < 2 * n)
    throw std::invalid_argument("sample_top_subset: need at least 2n = " + std::to_string(2 * n) + " ranked nodes, got " +
                                std::to_string(ranked.size()));
  std::vector<int> pool(ranked.begin(), ranked.begin() + 2 * n);
  for (int i = 0; i < n; ++i) {
    const auto j = i + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(2 * n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(n);
  return pool;
}

ConstraintKind parse_constraint_kind(const std::string& s) {
  if (s == "none") return ConstraintKind::none;
  if (s == "bnc") return ConstraintKind::bnc;
  if (s == "road") return ConstraintKind::road;
  if (s == "time") return ConstraintKind::time;
  throw std::invalid_argument("unknown constraint kind '" + s + "' (expected none|bnc|road|time)");
}

std::string to_string(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::none:
      return "none";
    case ConstraintKind::bnc:
      return "bnc";
    case ConstraintKind::road:
      return "road";
    default:
      return "time";
  }
}

bool admits_feasible_tour(const CostMatrix& cost, const ConstraintSet& constraints) {
  const int n = cost.n();
  if (n > kMaxFeasibilityCheck) throw std::invalid_argument("admits_feasible_tour: n exceeds 10");
  const TspProblem problem(cost, constraints, {.build_table = false});
  std::vector<int> seq(n);
  std::iota(seq.begin(), seq.end(), 0);
  do {
    if (violates_nothing(problem, seq)) return true;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return false;
}

ConstraintSet gen_constraints(ConstraintKind kind, const CostMatrix& cost, Rng& rng) {
  const int n = cost.n();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    ConstraintSet c;
    switch (kind) {
      case ConstraintKind::none:
        return c;
      case ConstraintKind::bnc: {
        std::vector<std::uint8_t> k(n, 0);
        std::fill(k.begin(), k.begin() + n / 2, 1);
        for (int i = n - 1; i > 0; --i) std::swap(k[i], k[uniform_index(rng, static_cast<std::uint64_t>(i) + 1)]);
        c.bnc = std::move(k);
        break;
      }
      case ConstraintKind::road: {
        BinaryMatrix r(n, n, 0);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j) r(i, j) = uniform01(rng) < kConstraintDensity;
        c.road = std::move(r);
        break;
      }
      case ConstraintKind::time: {
        BinaryMatrix t(n, n, 0);
        for (int i = 0; i < n; ++i)
          for (int s = 0; s < n; ++s) t(i, s) = uniform01(rng) < kConstraintDensity;
        c.time = std::move(t);
        break;
      }
    }
    if (n > kMaxFeasibilityCheck || admits_feasible_tour(cost, c)) return c;
  }
  throw std::runtime_error("gen_constraints: no feasible instance after 10000 draws");
}

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw FormatError(origin + ": " + what);
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("invalid JSON (") + e.what() + ")");
  }
}

double number_at(const json& v, const std::string& origin, const std::string& field) {
  if (!v.is_number()) fail(origin, "field '" + field + "' must be a number");
  return v.get<double>();
}

Grid<double> real_grid(const json& rows, const std::string& origin, const std::string& field) {
  if (!rows.is_array() || rows.empty()) fail(origin, "field '" + field + "' must be a non-empty array of rows");
  const std::size_t n = rows.size();
  Grid<double> g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n)
      fail(origin, "field '" + field + "' row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    for (std::size_t j = 0; j < n; ++j)
      g(i, j) = number_at(rows[i][j], origin, field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
  }
  return g;
}

BinaryMatrix binary_grid(const json& rows, const std::string& origin, const std::string& field) {
  const Grid<double> g = real_grid(rows, origin, field);
  BinaryMatrix b(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      if (g(i, j) != 0 && g(i, j) != 1) fail(origin, "field '" + field + "' must contain only 0/1");
      b(i, j) = static_cast<std::uint8_t>(g(i, j));
    }
  return b;
}

json grid_json(const Grid<double>& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(g(i, j));
    rows.push_back(row);
  }
  return rows;
}

json binary_json(const BinaryMatrix& g) {
  json rows = json::array();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < g.cols(); ++j) row.push_back(static_cast<int>(g(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

double parse_double(std::string_view s, const std::string& origin, std::size_t line, const std::string& field) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || r.ec != std::errc() || r.ptr != s.data() + s.size())
    fail(origin, "line " + std::to_string(line) + ", field " + field + ": '" + std::string(s) + "' is not a number");
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == sep) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t") == std::string::npos; }

template <class F>
auto with_context(const std::string& origin, F&& f) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
}

}  // namespace

std::string matrix_to_json(const CostMatrix& m) {
  json j;
  j["n"] = m.n();
  j["matrix"] = grid_json(m.grid());
  return j.dump() + "\n";
}

CostMatrix matrix_from_json(const std::string& text, const std::string& origin) {
  const json j = parse_json(text, origin);
  const json& rows = j.is_object() ? (j.contains("matrix") ? j["matrix"] : json()) : j;
  if (rows.is_null()) fail(origin, "missing field 'matrix'");
  Grid<double> g = real_grid(rows, origin, "matrix");
  if (j.is_object() && j.contains("n") && j["n"] != static_cast<int>(g.rows()))
    fail(origin, "field 'n' disagrees with the matrix size");
  return with_context(origin, [&] { return CostMatrix(std::move(g)); });
}

std::string matrix_to_csv(const CostMatrix& m) {
  std::string out;
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      if (j) out += ',';
      out += shortest(m(i, j));
    }
    out += '\n';
  }
  return out;
}

CostMatrix matrix_from_csv(const std::string& text, const std::string& origin) {
  std::vector<std::vector<double>> rows;
  const auto lines = lines_of(text);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (blank(lines[l])) continue;
    std::vector<double> row;
    const auto cells = split(lines[l], ',');
    for (std::size_t c = 0; c < cells.size(); ++c) row.push_back(parse_double(cells[c], origin, l + 1, std::to_string(c + 1)));
    rows.push_back(std::move(row));
  }
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != rows.size())
      fail(origin, "row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) + " entries, expected " +
                       std::to_string(rows.size()));
  return with_context(origin, [&] { return CostMatrix::from_rows(rows); });
}

std::string constraints_to_json(const ConstraintSet& c) {
  json j = json::object();
  if (c.bnc) {
    json k = json::array();
    for (auto b : *c.bnc) k.push_back(static_cast<int>(b));
    j["bnc"] = k;
  }
  if (c.road) j["road"] = binary_json(*c.road);
  if (c.time) j["time"] = binary_json(*c.time);
  json lam = json::object();
  const auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) lam[key] = *v;
  };
  put("p", c.lambda.p);
  put("q", c.lambda.q);
  put("k", c.lambda.k);
  put("r", c.lambda.road);
  put("t", c.lambda.time);
  if (!lam.empty()) j["lambda"] = lam;
  return j.dump() + "\n";
}

ConstraintSet constraints_from_json(const std::string& text, const std::string& origin) {
  const json j = parse_json(text, origin);
  if (!j.is_object()) fail(origin, "expected a JSON object");
  ConstraintSet c;
  for (const auto& [key, v] : j.items()) {
    if (v.is_null()) continue;
    if (key == "bnc") {
      if (!v.is_array()) fail(origin, "field 'bnc' must be an array");
      std::vector<std::uint8_t> k;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer() || (v[i] != 0 && v[i] != 1))
          fail(origin, "field 'bnc[" + std::to_string(i) + "]' must be 0 or 1");
        k.push_back(static_cast<std::uint8_t>(v[i].get<int>()));
      }
      c.bnc = std::move(k);
    } else if (key == "road") {
      c.road = binary_grid(v, origin, "road");
    } else if (key == "time") {
      c.time = binary_grid(v, origin, "time");
    } else if (key == "lambda") {
      if (!v.is_object()) fail(origin, "field 'lambda' must be an object");
      for (const auto& [name, w] : v.items()) {
        const double x = number_at(w, origin, "lambda." + name);
        if (name == "p") c.lambda.p = x;
        else if (name == "q") c.lambda.q = x;
        else if (name == "k") c.lambda.k = x;
        else if (name == "r" || name == "road") c.lambda.road = x;
        else if (name == "t" || name == "time") c.lambda.time = x;
        else fail(origin, "unknown field 'lambda." + name + "'");
      }
    } else {
      fail(origin, "unknown field '" + key + "'");
    }
  }
  return c;
}

std::string graph_to_csv(const WeightedDigraph& g) {
  std::string out = "u,v,length_m,maxspeed_kmh\n";
  for (const Edge& e : g.edges)
    out += std::to_string(e.u) + "," + std::to_string(e.v) + "," + shortest(e.length_m) + "," + shortest(e.maxspeed_kmh) + "\n";
  return out;
}

WeightedDigraph graph_from_csv(const std::string& text, const std::string& origin) {
  const auto lines = lines_of(text);
  WeightedDigraph g;
  bool header = false;
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (blank(lines[l])) continue;
    if (!header) {
      if (lines[l] != "u,v,length_m,maxspeed_kmh")
        fail(origin, "line " + std::to_string(l + 1) + ": expected header 'u,v,length_m,maxspeed_kmh'");
      header = true;
      continue;
    }
    const auto cells = split(lines[l], ',');
    if (cells.size() != 4)
      fail(origin, "line " + std::to_string(l + 1) + ": expected 4 fields, got " + std::to_string(cells.size()));
    Edge e;
    const double u = parse_double(cells[0], origin, l + 1, "u");
    const double v = parse_double(cells[1], origin, l + 1, "v");
    if (u < 0 || v < 0 || u != std::floor(u) || v != std::floor(v))
      fail(origin, "line " + std::to_string(l + 1) + ": node ids must be nonnegative integers");
    e.u = static_cast<int>(u);
    e.v = static_cast<int>(v);
    e.length_m = parse_double(cells[2], origin, l + 1, "length_m");
    e.maxspeed_kmh = parse_double(cells[3], origin, l + 1, "maxspeed_kmh");
    if (!(e.length_m > 0)) fail(origin, "line " + std::to_string(l + 1) + ", field length_m: must be positive");
    if (!(e.maxspeed_kmh > 0)) fail(origin, "line " + std::to_string(l + 1) + ", field maxspeed_kmh: must be positive");
    g.nodes = std::max({g.nodes, e.u + 1, e.v + 1});
    g.edges.push_back(e);
  }
  if (!header) fail(origin, "empty graph file");
  return g;
}

RankedNodes ranked_from_text(const std::string& text, const std::string& origin) {
  RankedNodes out;
  const auto lines = lines_of(text);
  for (std::size_t l = 0; l < lines.size(); ++l) {
    if (blank(lines[l])) continue;
    const double v = parse_double(lines[l], origin, l + 1, "node");
    if (v < 0 || v != std::floor(v)) fail(origin, "line " + std::to_string(l + 1) + ": node id must be a nonnegative integer");
    const int id = static_cast<int>(v);
    if (std::find(out.begin(), out.end(), id) != out.end())
      fail(origin, "line " + std::to_string(l + 1) + ": duplicate node " + std::to_string(id));
    out.push_back(id);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

CostMatrix load_matrix(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  return path.extension() == ".csv" ? matrix_from_csv(text, path.string()) : matrix_from_json(text, path.string());
}

void save_matrix(const std::filesystem::path& path, const CostMatrix& m) {
  write_file(path, path.extension() == ".csv" ? matrix_to_csv(m) : matrix_to_json(m));
}

ConstraintSet load_constraints(const std::filesystem::path& path) {
  return constraints_from_json(read_file(path), path.string());
}

}  // namespace clq
