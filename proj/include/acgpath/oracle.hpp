#pragma once

#include <span>

#include "acgpath/atomic.hpp"
#include "acgpath/graph.hpp"

namespace acg {

struct OracleResult {
  bool feasible = false;
  Path path;
  double cost = 0.0;
  long partials = 0;  // DFS partial paths explored
};

// Exhaustive DFS over all elementary s-t paths, no pruning beyond
// elementarity; ground truth at desk scale. Throws TooLarge past the guard.
OracleResult enumerate_paths(const Graph& g,
                             std::span<const ConstraintSpec> constraints,
                             long max_partials = 10'000'000);

// LP value of the compact arc-flow relaxation: unit s-t flow conservation,
// linear resource windows, x in [0,1]. Valid as a bound only without
// circuits, so cyclic graphs are rejected. Returns +inf when infeasible.
double compact_relaxation(const Graph& g,
                          std::span<const ConstraintSpec> constraints);

}  // namespace acg
