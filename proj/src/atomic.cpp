#include "acgpath/atomic.hpp"

namespace acg {

bool check(const Graph& g, const AtomicAlgorithm& alg, const Path& p) {
  PathMetrics m = g.evaluate(p);
  if (!m.connects_s_to_t || !m.elementary) return false;
  for (const ConstraintSpec& c : alg.constraints)
    if (!c.satisfied(m.resource_totals)) return false;
  return true;
}

bool is_single_st_path(const Graph& g, const ArcSet& allowed) {
  // Walk from s along unique allowed out-arcs; the set qualifies when the
  // walk reaches t having consumed every allowed arc exactly once.
  int node = g.source();
  int used = 0;
  std::vector<uint8_t> seen(g.num_nodes(), 0);
  seen[node] = 1;
  while (node != g.target()) {
    int next_arc = -1;
    for (int a : g.out_arcs(node)) {
      if (!allowed.contains(a)) continue;
      if (next_arc >= 0) return false;  // branching
      next_arc = a;
    }
    if (next_arc < 0) return false;  // dead end
    int head = g.arc(next_arc).head;
    if (seen[head]) return false;  // cycle
    seen[head] = 1;
    node = head;
    used++;
  }
  return used == allowed.count();
}

AtomicResult atomic_solve(const Graph& g, const AtomicAlgorithm& alg,
                          std::span<const double> arc_costs,
                          const ArcSet& allowed, Deadline deadline,
                          long* expansions) {
  AtomicResult r = multipulse(g, arc_costs, alg.constraints, allowed, deadline,
                              expansions);
  if (alg.heuristic_mode && !is_single_st_path(g, allowed)) {
    r.opt = false;
    r.unfeas = false;
  }
  return r;
}

}  // namespace acg
