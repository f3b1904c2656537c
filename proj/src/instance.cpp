#include "acgpath/instance.hpp"

#include <json.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "acgpath/errors.hpp"
#include "acgpath/oracle.hpp"
#include "acgpath/rng.hpp"

namespace acg {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Walk {
  int start = -1;
  Path path;
};

Walk random_walk(const Graph& g, int path_size, Rng& rng) {
  Walk w;
  w.start = rng.uniform_int(0, g.num_nodes() - 1);
  std::vector<char> visited(g.num_nodes(), 0);
  visited[w.start] = 1;
  int at = w.start;
  while (static_cast<int>(w.path.size()) < path_size) {
    std::vector<int> options;
    for (int a : g.out_arcs(at))
      if (!visited[g.arc(a).head]) options.push_back(a);
    if (options.empty()) break;
    int pick = options[rng.uniform_int(0, static_cast<int>(options.size()) - 1)];
    w.path.arcs.push_back(pick);
    at = g.arc(pick).head;
    visited[at] = 1;
  }
  return w;
}

std::vector<double> walk_totals(const Graph& g, const Path& p) {
  std::vector<double> t(g.resource_count(), 0.0);
  for (int a : p.arcs)
    for (int j = 0; j < g.resource_count(); ++j)
      t[j] += g.arc(a).resources[j];
  return t;
}

Graph with_endpoints(const Graph& g, int source, int target) {
  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  return Graph::build(g.num_nodes(), arcs, source, target, g.resource_count());
}

double metric_total(const Graph& g, const Path& p, int metric) {
  double t = 0.0;
  for (int a : p.arcs) t += g.arc(a).resources[metric];
  return t;
}

std::vector<double> metric_as_costs(const Graph& g, int metric) {
  std::vector<double> c(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) c[a] = g.arc(a).resources[metric];
  return c;
}

const ordered_json& field(const ordered_json& j, const char* key,
                          const char* where) {
  if (!j.contains(key))
    throw ParseError(std::string(where) + ": missing field '" + key + "'");
  return j.at(key);
}

}  // namespace

std::vector<AtomicAlgorithm> make_algorithms(const Instance& inst,
                                             bool heuristic) {
  std::vector<AtomicAlgorithm> algs;
  for (const auto& group : inst.grouping) {
    AtomicAlgorithm alg;
    alg.heuristic_mode = heuristic;
    for (int idx : group) alg.constraints.push_back(inst.constraints.at(idx));
    algs.push_back(std::move(alg));
  }
  if (algs.empty()) algs.push_back(AtomicAlgorithm{{}, heuristic});
  return algs;
}

Graph grid(int width, int height, std::uint64_t seed, int resource_count) {
  if (width < 2 || height < 2)
    throw BadEndpoint("grid needs width and height of at least 2");
  Rng rng(seed);
  std::vector<Arc> arcs;
  auto emit = [&](int u, int v) {
    Arc a;
    a.tail = u;
    a.head = v;
    a.cost = double(rng.uniform_int(10, 100));
    a.resources.reserve(resource_count);
    for (int j = 0; j < resource_count; ++j)
      a.resources.push_back(double(rng.uniform_int(10, 100)));
    arcs.push_back(std::move(a));
  };
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      int u = r * width + c;
      if (c + 1 < width) {
        emit(u, u + 1);
        emit(u + 1, u);
      }
      if (r + 1 < height) {
        emit(u, u + width);
        emit(u + width, u);
      }
    }
  }
  return Graph::build(width * height, arcs, 0, width * height - 1,
                      resource_count);
}

Instance gen_feasible(const Graph& g, int path_size, std::uint64_t seed,
                      int n_upper, int n_range, bool include) {
  if (n_upper + n_range > g.resource_count())
    throw ResourceArityMismatch(
        "graph carries fewer metrics than the requested constraints");
  Rng rng(seed);
  Walk w = random_walk(g, path_size, rng);
  if (w.path.empty())
    throw GenerationFailure("random walk could not leave its start node");
  int walk_end = g.arc(w.path.arcs.back()).head;

  if (include && w.path.size() < 2)
    throw WalkTooShort("node inclusion needs an interior walk node");

  std::vector<double> totals = walk_totals(g, w.path);
  Instance inst;
  for (int j = 0; j < n_upper; ++j)
    inst.constraints.push_back(ConstraintSpec::make_upper(j, 1.2 * totals[j]));
  for (int j = n_upper; j < n_upper + n_range; ++j)
    inst.constraints.push_back(
        ConstraintSpec::make_range(j, 0.8 * totals[j], 1.2 * totals[j]));

  std::vector<Arc> arcs(g.arcs().begin(), g.arcs().end());
  int resource_count = g.resource_count();
  if (include) {
    // interior nodes: every walk node but the two endpoints
    int k = static_cast<int>(w.path.size());
    int pick_idx = rng.uniform_int(0, k - 2);
    int node = g.arc(w.path.arcs[pick_idx]).head;
    for (auto& a : arcs) a.resources.push_back(a.tail == node ? 1.0 : 0.0);
    inst.constraints.push_back(ConstraintSpec::make_include(resource_count, node));
    ++resource_count;
  }
  inst.graph =
      Graph::build(g.num_nodes(), arcs, w.start, walk_end, resource_count);
  for (int i = 0; i < static_cast<int>(inst.constraints.size()); ++i)
    inst.grouping.push_back({i});
  inst.meta = {seed, "feasible", path_size};
  return inst;
}

Instance unfeasible_from_range(const Graph& g, double lower, double upper) {
  if (g.resource_count() < 2)
    throw ResourceArityMismatch("unfeasible construction uses metrics 0 and 1");
  const ConstraintSpec range = ConstraintSpec::make_range(0, lower, upper);
  AtomicResult base =
      multipulse(g, metric_as_costs(g, 1), std::span(&range, 1),
                 ArcSet::all(g.num_arcs()), Deadline::never());
  if (!base.opt)
    throw BaseInfeasible("no path satisfies the metric-0 range");
  double best_r1 = metric_total(g, base.path, 1);

  Instance inst;
  inst.graph = g;
  inst.constraints = {range, ConstraintSpec::make_upper(1, best_r1 - 1.0)};
  inst.grouping = {{0}, {1}};
  inst.meta = {0, "unfeasible", 0};
  return inst;
}

Instance gen_unfeasible(const Graph& g, int path_size, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Walk w = random_walk(g, path_size, rng);
    if (w.path.empty()) continue;
    int walk_end = g.arc(w.path.arcs.back()).head;
    Graph h = with_endpoints(g, w.start, walk_end);
    double r0 = metric_total(h, w.path, 0);

    Instance inst;
    try {
      inst = unfeasible_from_range(h, 0.8 * r0, 1.2 * r0);
    } catch (const BaseInfeasible&) {
      continue;  // cannot happen for the walk's own range; stay defensive
    }
    // the Upper alone must stay satisfiable: some path off the range has to
    // undercut the in-range optimum
    double unconstrained = kInf;
    AtomicResult free_min = multipulse(h, metric_as_costs(h, 1), {},
                                       ArcSet::all(h.num_arcs()), Deadline::never());
    if (free_min.opt) unconstrained = metric_total(h, free_min.path, 1);
    if (unconstrained <= inst.constraints[1].upper) {
      inst.meta = {seed, "unfeasible", path_size};
      return inst;
    }
  }
  throw GenerationFailure(
      "no walk produced a cross-constraint conflict in 64 attempts");
}

Graph read_topology(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int nodes = -1;
  int arity = -1;
  std::vector<Arc> arcs;
  auto fail = [&](const std::string& why) {
    throw ParseError("topology line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    if (word == "nodes") {
      if (!(ls >> nodes) || nodes <= 0) fail("expected a positive node count");
    } else if (word == "edge") {
      if (nodes < 0) fail("edge before the nodes line");
      Arc a;
      if (!(ls >> a.tail >> a.head >> a.cost)) fail("expected: edge u v cost");
      double r;
      while (ls >> r) a.resources.push_back(r);
      if (arity < 0) arity = static_cast<int>(a.resources.size());
      if (static_cast<int>(a.resources.size()) != arity)
        fail("resource arity differs from the first edge");
      Arc back = a;
      std::swap(back.tail, back.head);
      arcs.push_back(std::move(a));
      arcs.push_back(std::move(back));
    } else {
      fail("unknown directive '" + word + "'");
    }
  }
  if (nodes < 0) throw ParseError("topology: missing nodes line");
  if (arcs.empty()) throw ParseError("topology: no edges");
  try {
    return Graph::build(nodes, arcs, 0, nodes - 1, arity < 0 ? 0 : arity);
  } catch (const Error& e) {
    throw ParseError(std::string("topology: ") + e.what());
  }
}

std::string write_instance(const Instance& inst) {
  const Graph& g = inst.graph;
  ordered_json j;
  j["version"] = 1;
  j["nodes"] = g.num_nodes();
  j["source"] = g.source();
  j["target"] = g.target();
  j["resource_count"] = g.resource_count();
  j["arcs"] = ordered_json::array();
  for (const Arc& a : g.arcs()) {
    ordered_json ja;
    ja["tail"] = a.tail;
    ja["head"] = a.head;
    ja["cost"] = a.cost;
    ja["resources"] = a.resources;
    j["arcs"].push_back(std::move(ja));
  }
  j["constraints"] = ordered_json::array();
  for (const ConstraintSpec& c : inst.constraints) {
    ordered_json jc;
    switch (c.kind) {
      case ConstraintKind::Upper:
        jc["kind"] = "upper";
        jc["resource"] = c.resource;
        jc["upper"] = c.upper;
        break;
      case ConstraintKind::Range:
        jc["kind"] = "range";
        jc["resource"] = c.resource;
        jc["lower"] = c.lower;
        jc["upper"] = c.upper;
        break;
      case ConstraintKind::Include:
        jc["kind"] = "include";
        jc["resource"] = c.resource;
        jc["node"] = c.node;
        break;
    }
    j["constraints"].push_back(std::move(jc));
  }
  j["grouping"] = inst.grouping;
  j["meta"] = {{"seed", inst.meta.seed},
               {"generator", inst.meta.generator},
               {"path_size", inst.meta.path_size}};
  return j.dump(2) + "\n";
}

Instance read_instance(const std::string& bytes) {
  ordered_json j;
  try {
    j = ordered_json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  try {
    if (field(j, "version", "instance").get<int>() != 1)
      throw ParseError("instance: unsupported version");
    int nodes = field(j, "nodes", "instance").get<int>();
    int source = field(j, "source", "instance").get<int>();
    int target = field(j, "target", "instance").get<int>();
    int resource_count = field(j, "resource_count", "instance").get<int>();

    std::vector<Arc> arcs;
    for (const auto& ja : field(j, "arcs", "instance")) {
      Arc a;
      a.tail = field(ja, "tail", "arc").get<int>();
      a.head = field(ja, "head", "arc").get<int>();
      a.cost = field(ja, "cost", "arc").get<double>();
      a.resources = field(ja, "resources", "arc").get<std::vector<double>>();
      arcs.push_back(std::move(a));
    }

    Instance inst;
    inst.graph = Graph::build(nodes, arcs, source, target, resource_count);

    for (const auto& jc : field(j, "constraints", "instance")) {
      std::string kind = field(jc, "kind", "constraint").get<std::string>();
      int resource = field(jc, "resource", "constraint").get<int>();
      if (resource < 0 || resource >= resource_count)
        throw ParseError("constraint: resource index out of range");
      if (kind == "upper") {
        inst.constraints.push_back(ConstraintSpec::make_upper(
            resource, field(jc, "upper", "constraint").get<double>()));
      } else if (kind == "range") {
        inst.constraints.push_back(ConstraintSpec::make_range(
            resource, field(jc, "lower", "constraint").get<double>(),
            field(jc, "upper", "constraint").get<double>()));
      } else if (kind == "include") {
        int node = field(jc, "node", "constraint").get<int>();
        if (node < 0 || node >= nodes)
          throw ParseError("constraint: include node out of range");
        inst.constraints.push_back(ConstraintSpec::make_include(resource, node));
      } else {
        throw ParseError("constraint: unknown kind '" + kind + "'");
      }
    }

    inst.grouping =
        field(j, "grouping", "instance").get<std::vector<std::vector<int>>>();
    for (const auto& group : inst.grouping)
      for (int idx : group)
        if (idx < 0 || idx >= static_cast<int>(inst.constraints.size()))
          throw ParseError("grouping: constraint index out of range");

    const auto& jm = field(j, "meta", "instance");
    inst.meta.seed = field(jm, "seed", "meta").get<std::uint64_t>();
    inst.meta.generator = field(jm, "generator", "meta").get<std::string>();
    inst.meta.path_size = field(jm, "path_size", "meta").get<int>();
    return inst;
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

std::string write_solution(const Solution& sol, const Graph& g) {
  ordered_json j;
  j["status"] = status_name(sol.status);
  j["cost"] = sol.cost;                // non-finite values serialize as null
  j["lower_bound"] = sol.lower_bound;
  j["path"] = sol.path.arcs;
  j["resource_totals"] = g.evaluate(sol.path).resource_totals;
  j["stats"] = {{"columns", sol.stats.columns},
                {"nodes_expanded", sol.stats.nodes_expanded},
                {"atomic_calls", sol.stats.atomic_calls},
                {"cg_calls", sol.stats.cg_calls},
                {"wall_ms", sol.stats.wall_ms}};
  return j.dump(2) + "\n";
}

Solution read_solution(const std::string& bytes) {
  ordered_json j;
  try {
    j = ordered_json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
  try {
    Solution sol;
    std::string status = field(j, "status", "solution").get<std::string>();
    if (status == "Optimal")
      sol.status = SolveStatus::Optimal;
    else if (status == "Infeasible")
      sol.status = SolveStatus::Infeasible;
    else if (status == "TimeLimit")
      sol.status = SolveStatus::TimeLimit;
    else
      throw ParseError("solution: unknown status '" + status + "'");

    const auto& jc = field(j, "cost", "solution");
    sol.cost = jc.is_null() ? kInf : jc.get<double>();
    const auto& jb = field(j, "lower_bound", "solution");
    sol.lower_bound = jb.is_null()
                          ? (sol.status == SolveStatus::Infeasible ? kInf : -kInf)
                          : jb.get<double>();
    sol.path.arcs = field(j, "path", "solution").get<std::vector<int>>();

    const auto& js = field(j, "stats", "solution");
    sol.stats.columns = field(js, "columns", "stats").get<long>();
    sol.stats.nodes_expanded = field(js, "nodes_expanded", "stats").get<long>();
    sol.stats.atomic_calls = field(js, "atomic_calls", "stats").get<long>();
    sol.stats.cg_calls = field(js, "cg_calls", "stats").get<long>();
    sol.stats.wall_ms = field(js, "wall_ms", "stats").get<double>();
    return sol;
  } catch (const ParseError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
}

namespace {

Solution run_multipulse(const Instance& inst, std::chrono::milliseconds limit) {
  const Graph& g = inst.graph;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<double> costs(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) costs[a] = g.arc(a).cost;
  long expansions = 0;
  AtomicResult r = multipulse(g, costs, inst.constraints,
                              ArcSet::all(g.num_arcs()), Deadline::in(limit),
                              &expansions);
  Solution sol;
  sol.stats.atomic_calls = 1;
  sol.stats.nodes_expanded = expansions;
  if (r.opt) {
    sol.status = SolveStatus::Optimal;
    sol.path = r.path;
    sol.cost = g.evaluate(r.path).cost;
    sol.lower_bound = sol.cost;
  } else if (r.unfeas) {
    sol.status = SolveStatus::Infeasible;
    sol.lower_bound = std::numeric_limits<double>::infinity();
  } else {
    sol.status = SolveStatus::TimeLimit;
    if (!r.path.empty()) {
      sol.path = r.path;
      sol.cost = g.evaluate(r.path).cost;
    }
  }
  sol.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return sol;
}

Solution run_oracle(const Instance& inst) {
  auto t0 = std::chrono::steady_clock::now();
  OracleResult r = enumerate_paths(inst.graph, inst.constraints);
  Solution sol;
  if (r.feasible) {
    sol.status = SolveStatus::Optimal;
    sol.path = r.path;
    sol.cost = r.cost;
    sol.lower_bound = r.cost;
  } else {
    sol.status = SolveStatus::Infeasible;
    sol.lower_bound = std::numeric_limits<double>::infinity();
  }
  sol.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return sol;
}

}  // namespace

Solution solve_instance(const Instance& inst, const std::string& algo,
                        const SolverConfig& cfg) {
  if (algo == "multipulse") return run_multipulse(inst, cfg.global_limit);
  if (algo == "oracle") return run_oracle(inst);

  SolverConfig c = cfg;
  if (algo == "acg")
    c.variant = Variant::ACG;
  else if (algo == "acg1")
    c.variant = Variant::ACG1;
  else if (algo == "acgh")
    c.variant = Variant::ACGH;
  else if (algo == "acgr")
    c.variant = Variant::ACGR;
  else
    throw Error("unknown algorithm: " + algo);
  return solve(inst.graph, make_algorithms(inst), c);
}

bool check_solution(const Instance& inst, const Solution& sol) {
  if (sol.path.empty()) return sol.status != SolveStatus::Optimal;
  PathMetrics m = inst.graph.evaluate(sol.path);
  bool ok = m.connects_s_to_t && m.elementary;
  for (const ConstraintSpec& c : inst.constraints)
    ok = ok && c.satisfied(m.resource_totals);
  return ok && std::abs(m.cost - sol.cost) <= 1e-6;
}

}  // namespace acg
