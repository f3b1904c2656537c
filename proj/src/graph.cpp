#include "acgpath/graph.hpp"

#include <algorithm>

namespace acg {

Graph Graph::build(int nodes, std::vector<Arc> arcs, int source, int target,
                   int resource_count) {
  if (nodes <= 0) throw BadEndpoint("graph needs at least one node");
  if (source < 0 || source >= nodes || target < 0 || target >= nodes)
    throw BadEndpoint("source or target out of range");
  if (source == target) throw BadEndpoint("source equals target");
  if (resource_count < 0) throw ResourceArityMismatch("negative resource count");

  Graph g;
  g.nodes_ = nodes;
  g.source_ = source;
  g.target_ = target;
  g.resource_count_ = resource_count;
  g.out_.resize(nodes);
  g.in_.resize(nodes);
  g.arcs_ = std::move(arcs);

  for (size_t i = 0; i < g.arcs_.size(); ++i) {
    Arc& a = g.arcs_[i];
    a.id = static_cast<int>(i);
    if (a.tail < 0 || a.tail >= nodes || a.head < 0 || a.head >= nodes)
      throw BadEndpoint("arc endpoint out of range");
    if (a.tail == a.head) throw BadEndpoint("self-loop");
    if (a.cost < 0.0) throw NegativeCost("arc cost below zero");
    if (static_cast<int>(a.resources.size()) != resource_count)
      throw ResourceArityMismatch("arc resource vector has wrong length");
    for (double r : a.resources)
      if (r < 0.0) throw NegativeCost("arc resource below zero");
    g.out_[a.tail].push_back(a.id);
    g.in_[a.head].push_back(a.id);
    g.max_cost_ = std::max(g.max_cost_, a.cost);
  }
  return g;
}

PathMetrics Graph::evaluate(const Path& p) const {
  PathMetrics m;
  m.resource_totals.assign(resource_count_, 0.0);

  bool chained = true;
  std::vector<uint8_t> seen(nodes_, 0);
  bool duplicate = false;

  for (size_t i = 0; i < p.arcs.size(); ++i) {
    const Arc& a = arcs_[p.arcs[i]];
    m.cost += a.cost;
    for (int j = 0; j < resource_count_; ++j)
      m.resource_totals[j] += a.resources[j];
    if (i == 0) {
      seen[a.tail] = 1;
    } else if (arcs_[p.arcs[i - 1]].head != a.tail) {
      chained = false;
    }
    if (seen[a.head]) duplicate = true;
    seen[a.head] = 1;
  }

  m.elementary = !p.arcs.empty() && chained && !duplicate;
  m.connects_s_to_t = !p.arcs.empty() && chained &&
                      arcs_[p.arcs.front()].tail == source_ &&
                      arcs_[p.arcs.back()].head == target_;
  return m;
}

}  // namespace acg
