#include <algorithm>
#include <cmath>
#include <queue>

#include "acgpath/atomic.hpp"
#include "acgpath/errors.hpp"

namespace acg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> dijkstra(const Graph& g, std::span<const double> arc_costs,
                             int origin, bool reversed, const ArcSet* allowed) {
  for (double c : arc_costs)
    if (c < 0.0) throw NegativeCost("dijkstra needs nonnegative costs");
  std::vector<double> dist(g.num_nodes(), kInf);
  dist[origin] = 0.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
  heap.emplace(0.0, origin);
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    const auto& arcs = reversed ? g.in_arcs(u) : g.out_arcs(u);
    for (int a : arcs) {
      if (allowed && !allowed->contains(a)) continue;
      const Arc& arc = g.arc(a);
      int v = reversed ? arc.tail : arc.head;
      double nd = d + arc_costs[a];
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  return dist;
}

PulseBounds pulse_preprocess(const Graph& g, std::span<const double> arc_costs,
                             std::span<const ConstraintSpec> constraints,
                             const ArcSet& allowed) {
  PulseBounds b;
  b.min_cost_to_t = dijkstra(g, arc_costs, g.target(), true, &allowed);
  b.min_resource_to_t.resize(g.resource_count());
  std::vector<double> metric(g.num_arcs());
  for (const ConstraintSpec& c : constraints) {
    if (!b.min_resource_to_t[c.resource].empty()) continue;
    for (int a = 0; a < g.num_arcs(); ++a)
      metric[a] = g.arc(a).resources[c.resource];
    b.min_resource_to_t[c.resource] =
        dijkstra(g, metric, g.target(), true, &allowed);
  }
  return b;
}

std::vector<int> pulse_next_arc(const Graph& g,
                                std::span<const double> consumed,
                                std::span<const int> candidates,
                                std::span<const ConstraintSpec> constraints,
                                std::span<const double> arc_costs,
                                const PulseBounds& bounds) {
  double worst_gap = 0.0;
  for (const ConstraintSpec& c : constraints)
    if (c.has_lower())
      worst_gap = std::max(worst_gap, c.lower - consumed[c.resource]);

  std::vector<std::pair<double, int>> keyed;
  keyed.reserve(candidates.size());
  for (int a : candidates) {
    const Arc& arc = g.arc(a);
    double key;
    if (worst_gap > 0.0) {
      // residual worst gap after taking the arc
      key = -kInf;
      for (const ConstraintSpec& c : constraints)
        if (c.has_lower())
          key = std::max(key, c.lower - consumed[c.resource] -
                                  arc.resources[c.resource]);
    } else {
      key = arc_costs[a] + bounds.min_cost_to_t[arc.head];
    }
    keyed.emplace_back(key, a);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<int> out;
  out.reserve(keyed.size());
  for (auto& [k, a] : keyed) out.push_back(a);
  return out;
}

namespace {

struct PulseSearch {
  const Graph& g;
  std::span<const double> costs;
  std::span<const ConstraintSpec> cons;
  const ArcSet& allowed;
  const PulseBounds& bounds;
  Deadline deadline;

  std::vector<uint8_t> visited;
  std::vector<double> consumed;
  std::vector<int> stack;
  Path best;
  double best_cost = kInf;
  long expansions = 0;
  bool timed_out = false;

  PulseSearch(const Graph& g_, std::span<const double> c,
              std::span<const ConstraintSpec> k, const ArcSet& al,
              const PulseBounds& b, Deadline dl)
      : g(g_), costs(c), cons(k), allowed(al), bounds(b), deadline(dl),
        visited(g_.num_nodes(), 0), consumed(g_.resource_count(), 0.0) {}

  void dfs(int node, double cost) {
    if (timed_out) return;
    if ((++expansions & 1023) == 0 && deadline.expired()) {
      timed_out = true;
      return;
    }
    if (node == g.target()) {
      // elementary s-t paths cannot continue past t
      for (const ConstraintSpec& c : cons)
        if (c.has_lower() && consumed[c.resource] < c.lower - 1e-9) return;
      if (cost < best_cost) {
        best_cost = cost;
        best.arcs = stack;
      }
      return;
    }
    std::vector<int> cands;
    for (int a : g.out_arcs(node)) {
      if (!allowed.contains(a)) continue;
      const Arc& arc = g.arc(a);
      if (visited[arc.head]) continue;  // rule (iii)
      bool pruned = false;
      for (const ConstraintSpec& c : cons) {  // rule (i)
        const auto& mins = bounds.min_resource_to_t[c.resource];
        double reach = consumed[c.resource] + arc.resources[c.resource] +
                       mins[arc.head];
        if (reach > c.upper + 1e-9) { pruned = true; break; }
      }
      if (pruned) continue;
      // rule (ii); also removes heads that cannot reach t at all
      if (cost + costs[a] + bounds.min_cost_to_t[arc.head] >= best_cost - 1e-12)
        continue;
      cands.push_back(a);
    }
    if (cands.empty()) return;
    std::vector<int> ordered =
        pulse_next_arc(g, consumed, cands, cons, costs, bounds);
    for (int a : ordered) {
      const Arc& arc = g.arc(a);
      // re-test (ii): the incumbent may have improved inside this loop
      if (cost + costs[a] + bounds.min_cost_to_t[arc.head] >= best_cost - 1e-12)
        continue;
      visited[arc.head] = 1;
      for (int j = 0; j < g.resource_count(); ++j)
        consumed[j] += arc.resources[j];
      stack.push_back(a);
      dfs(arc.head, cost + costs[a]);
      stack.pop_back();
      for (int j = 0; j < g.resource_count(); ++j)
        consumed[j] -= arc.resources[j];
      visited[arc.head] = 0;
      if (timed_out) return;
    }
  }
};

}  // namespace

AtomicResult multipulse(const Graph& g, std::span<const double> arc_costs,
                        std::span<const ConstraintSpec> constraints,
                        const ArcSet& allowed, Deadline deadline,
                        long* expansions) {
  if (deadline.expired()) return {};  // nothing searched, no certificates
  PulseBounds bounds = pulse_preprocess(g, arc_costs, constraints, allowed);
  PulseSearch search(g, arc_costs, constraints, allowed, bounds, deadline);
  if (bounds.min_cost_to_t[g.source()] < kInf) {
    search.visited[g.source()] = 1;
    search.dfs(g.source(), 0.0);
  }
  if (expansions) *expansions += search.expansions;
  AtomicResult r;
  r.path = std::move(search.best);
  if (search.timed_out) return r;  // best so far, no certificates
  if (r.path.empty()) {
    r.unfeas = true;
  } else {
    r.opt = true;
  }
  return r;
}

}  // namespace acg
