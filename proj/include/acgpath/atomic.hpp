#pragma once

#include <limits>
#include <span>
#include <vector>

#include "acgpath/deadline.hpp"
#include "acgpath/graph.hpp"

namespace acg {

enum class ConstraintKind { Upper, Range, Include };

// A resource window on path totals. Include(node) is encoded as a dedicated
// resource worth 1 on every outgoing arc of the node and 0 elsewhere, with
// lower = upper = 1: an elementary path holds total 1 exactly when it leaves
// the node once.
struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::Upper;
  int resource = 0;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  int node = -1;  // Include only

  bool has_lower() const { return kind != ConstraintKind::Upper; }

  bool satisfied(const std::vector<double>& totals) const {
    double v = totals[resource];
    if (v > upper + 1e-9) return false;
    if (has_lower() && v < lower - 1e-9) return false;
    return true;
  }

  static ConstraintSpec make_upper(int resource, double u) {
    return {ConstraintKind::Upper, resource, 0.0, u, -1};
  }
  static ConstraintSpec make_range(int resource, double l, double u) {
    return {ConstraintKind::Range, resource, l, u, -1};
  }
  static ConstraintSpec make_include(int resource, int node) {
    return {ConstraintKind::Include, resource, 1.0, 1.0, node};
  }
};

struct AtomicResult {
  Path path;
  bool opt = false;
  bool unfeas = false;
};

// One black-box pricing/feasibility backend: MultiPulse over a constraint
// subset. heuristic_mode masks certificates (ACG-H) except when the allowed
// set is literally a single s-t path.
struct AtomicAlgorithm {
  std::vector<ConstraintSpec> constraints;
  bool heuristic_mode = false;
};

std::vector<double> dijkstra(const Graph& g, std::span<const double> arc_costs,
                             int origin, bool reversed,
                             const ArcSet* allowed = nullptr);

struct PulseBounds {
  std::vector<double> min_cost_to_t;
  // indexed by resource id; empty vector = metric not constrained
  std::vector<std::vector<double>> min_resource_to_t;
};

PulseBounds pulse_preprocess(const Graph& g, std::span<const double> arc_costs,
                             std::span<const ConstraintSpec> constraints,
                             const ArcSet& allowed);

// DFS child order: while some lower bound is unmet, descend toward the arc
// that most reduces the worst residual gap; otherwise follow cheapest
// completion. Ties break on lower arc id.
std::vector<int> pulse_next_arc(const Graph& g,
                                std::span<const double> consumed,
                                std::span<const int> candidates,
                                std::span<const ConstraintSpec> constraints,
                                std::span<const double> arc_costs,
                                const PulseBounds& bounds);

AtomicResult multipulse(const Graph& g, std::span<const double> arc_costs,
                        std::span<const ConstraintSpec> constraints,
                        const ArcSet& allowed, Deadline deadline,
                        long* expansions = nullptr);

bool check(const Graph& g, const AtomicAlgorithm& alg, const Path& p);

bool is_single_st_path(const Graph& g, const ArcSet& allowed);

AtomicResult atomic_solve(const Graph& g, const AtomicAlgorithm& alg,
                          std::span<const double> arc_costs,
                          const ArcSet& allowed, Deadline deadline,
                          long* expansions = nullptr);

}  // namespace acg
