#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acgpath/atomic.hpp"
#include "acgpath/branch.hpp"
#include "acgpath/graph.hpp"

namespace acg {

struct InstanceMeta {
  std::uint64_t seed = 0;
  std::string generator = "manual";
  int path_size = 0;
};

struct Instance {
  Graph graph;
  std::vector<ConstraintSpec> constraints;
  std::vector<std::vector<int>> grouping;  // constraint indices per algorithm
  InstanceMeta meta;
};

// Empty grouping still yields one unconstrained algorithm, so every instance
// presents at least one pricing subproblem.
std::vector<AtomicAlgorithm> make_algorithms(const Instance& inst,
                                             bool heuristic = false);

// Bidirected 4-neighbor grid, nodes row-major, source 0, target w*h-1.
// Costs and resources drawn from integers [10,100]; the draw order (per node
// in id order: right edge then down edge, u->v before v->u, cost before
// resources) is part of the format, identical seeds are byte-identical.
Graph grid(int width, int height, std::uint64_t seed, int resource_count = 6);

// Elementary random walk witnesses feasibility: uppers at 1.2x the walk
// totals, ranges at [0.8, 1.2]x, plus one node-inclusion constraint on an
// interior walk node (encoded as an appended unit resource on its out-arcs).
Instance gen_feasible(const Graph& g, int path_size, std::uint64_t seed,
                      int n_upper = 3, int n_range = 3, bool include = true);

// Raw two-constraint construction: Range on metric 0, then the tightest
// Upper on metric 1 that no in-range path can meet (optimum - 1).
Instance unfeasible_from_range(const Graph& g, double lower, double upper);

// Walk-based wrapper around unfeasible_from_range that retries seeds until
// each constraint alone stays satisfiable, so the conflict is genuinely
// between the two subproblems.
Instance gen_unfeasible(const Graph& g, int path_size, std::uint64_t seed);

// Minimal text topology reader for node/edge exports:
//   # comment
//   nodes <count>
//   edge <u> <v> <cost> [<r1> <r2> ...]
// Every edge line is bidirected; the first edge fixes the resource arity.
// Source is node 0, target is the last node.
Graph read_topology(const std::string& text);

std::string write_instance(const Instance& inst);
Instance read_instance(const std::string& bytes);

std::string write_solution(const Solution& sol, const Graph& g);
Solution read_solution(const std::string& bytes);

// Name-dispatched solver entry shared by the CLI and the bindings. Names:
// acg, acg1, acgh, acgr (branch and price per cfg), multipulse (one atomic
// run over all constraints, honoring cfg.global_limit), oracle (exhaustive
// enumeration). Unknown names throw Error.
Solution solve_instance(const Instance& inst, const std::string& algo,
                        const SolverConfig& cfg);

// True iff the claimed path connects s to t, is elementary, satisfies every
// constraint, and matches the claimed cost within 1e-6. An empty path is
// valid exactly for non-Optimal statuses.
bool check_solution(const Instance& inst, const Solution& sol);

}  // namespace acg
