#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <vector>

#include "acgpath/atomic.hpp"
#include "acgpath/graph.hpp"
#include "acgpath/master.hpp"

namespace acg {

enum class SolveStatus { Optimal, Infeasible, TimeLimit };

const char* status_name(SolveStatus s);

// ACG: parallel tree, ACG1: single-threaded deterministic, ACGH: atomic
// algorithms run in heuristic mode, ACGR: root relaxation only.
enum class Variant { ACG, ACG1, ACGH, ACGR };

struct SolverConfig {
  std::chrono::milliseconds t_acg{500};
  std::chrono::milliseconds t_atomic{60};
  double gamma_ratio = 0.2;  // master LP runs once |allowed|/|A| drops below
  std::chrono::milliseconds global_limit{120000};
  Variant variant = Variant::ACG1;
  int workers = 1;
  std::uint64_t seed = 0;
};

struct SolveStats {
  long columns = 0;
  long nodes_expanded = 0;
  long atomic_calls = 0;
  long cg_calls = 0;
  double wall_ms = 0.0;
  double min_gamma_dual = 0.0;
};

// One open subtree: a committed prefix plus the arcs still eligible below it.
// p_plus, when set, is a fully feasible s-t path extending p.
struct BranchState {
  double c = 0.0;
  Path p;
  Path p_plus;
  ArcSet allowed;
  double l = -std::numeric_limits<double>::infinity();
  std::uint64_t seq = 0;
};

struct Incumbent {
  Path path;
  double cost = std::numeric_limits<double>::infinity();
};

struct Solution {
  SolveStatus status = SolveStatus::TimeLimit;
  Path path;
  double cost = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  SolveStats stats;
};

// Commits `chosen` after `prefix`. Removed: the other out-arcs of its tail,
// the other in-arcs of its head, and every arc re-entering a prefix node
// (prefix arcs themselves stay). Every s-t path on the result extends
// prefix+chosen.
ArcSet filter(const Graph& g, const ArcSet& allowed, int chosen,
              const Path& prefix);

// Tightens b.l (shortest-path bound, certified atomic optima, master LP when
// the gamma gate opens) and harvests incumbents from every fully feasible
// path seen along the way. Sets b.l = +inf on an unfeasibility certificate.
void update_state(BranchState& b, Incumbent& inc, MasterModel& mm,
                  const SolverConfig& cfg, Deadline global, SolveStats& stats);

Solution solve(const Graph& g, std::vector<AtomicAlgorithm> algs,
               const SolverConfig& cfg);

}  // namespace acg
