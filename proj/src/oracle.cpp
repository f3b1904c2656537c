#include "acgpath/oracle.hpp"

#include <limits>

#include "acgpath/errors.hpp"
#include "acgpath/simplex.hpp"

namespace acg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Enumerator {
  const Graph& g;
  std::span<const ConstraintSpec> cons;
  long limit;

  std::vector<uint8_t> visited;
  std::vector<double> consumed;
  std::vector<int> stack;
  double cost = 0.0;
  Path best;
  double best_cost = kInf;
  long partials = 0;

  Enumerator(const Graph& g_, std::span<const ConstraintSpec> c, long lim)
      : g(g_), cons(c), limit(lim), visited(g_.num_nodes(), 0),
        consumed(g_.resource_count(), 0.0) {}

  void dfs(int node) {
    if (++partials > limit) throw TooLarge("elementary path space too large");
    if (node == g.target()) {
      for (const ConstraintSpec& c : cons)
        if (!c.satisfied(consumed)) return;
      if (cost < best_cost) {
        best_cost = cost;
        best.arcs = stack;
      }
      return;
    }
    for (int a : g.out_arcs(node)) {
      const Arc& arc = g.arc(a);
      if (visited[arc.head]) continue;
      visited[arc.head] = 1;
      for (int j = 0; j < g.resource_count(); ++j)
        consumed[j] += arc.resources[j];
      cost += arc.cost;
      stack.push_back(a);
      dfs(arc.head);
      stack.pop_back();
      cost -= arc.cost;
      for (int j = 0; j < g.resource_count(); ++j)
        consumed[j] -= arc.resources[j];
      visited[arc.head] = 0;
    }
  }
};

bool is_acyclic(const Graph& g) {
  std::vector<int> indeg(g.num_nodes(), 0);
  for (const Arc& a : g.arcs()) indeg[a.head]++;
  std::vector<int> order;
  for (int u = 0; u < g.num_nodes(); ++u)
    if (indeg[u] == 0) order.push_back(u);
  size_t seen = 0;
  while (seen < order.size()) {
    int u = order[seen++];
    for (int a : g.out_arcs(u))
      if (--indeg[g.arc(a).head] == 0) order.push_back(g.arc(a).head);
  }
  return order.size() == static_cast<size_t>(g.num_nodes());
}

}  // namespace

OracleResult enumerate_paths(const Graph& g,
                             std::span<const ConstraintSpec> constraints,
                             long max_partials) {
  Enumerator e(g, constraints, max_partials);
  e.visited[g.source()] = 1;
  e.dfs(g.source());
  OracleResult r;
  r.partials = e.partials;
  if (e.best_cost < kInf) {
    r.feasible = true;
    r.path = std::move(e.best);
    r.cost = e.best_cost;
  }
  return r;
}

double compact_relaxation(const Graph& g,
                          std::span<const ConstraintSpec> constraints) {
  if (!is_acyclic(g))
    throw CyclicGraph("compact relaxation requires an acyclic graph");

  LpModel lp;
  std::vector<int> flow_row(g.num_nodes());
  for (int u = 0; u < g.num_nodes(); ++u) {
    double b = u == g.source() ? 1.0 : u == g.target() ? -1.0 : 0.0;
    flow_row[u] = lp.add_row(RowSense::EQ, b);
  }
  std::vector<std::pair<int, int>> bound_rows;  // (LE row, GE row or -1) per constraint
  for (const ConstraintSpec& c : constraints) {
    int le = lp.add_row(RowSense::LE, c.upper);
    int ge = c.has_lower() ? lp.add_row(RowSense::GE, c.lower) : -1;
    bound_rows.emplace_back(le, ge);
  }
  std::vector<int> cap_row(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a)
    cap_row[a] = lp.add_row(RowSense::LE, 1.0);

  for (int a = 0; a < g.num_arcs(); ++a) {
    const Arc& arc = g.arc(a);
    std::vector<std::pair<int, double>> coeffs;
    coeffs.emplace_back(flow_row[arc.tail], 1.0);
    coeffs.emplace_back(flow_row[arc.head], -1.0);
    for (size_t k = 0; k < constraints.size(); ++k) {
      double r = arc.resources[constraints[k].resource];
      if (r == 0.0) continue;
      coeffs.emplace_back(bound_rows[k].first, r);
      if (bound_rows[k].second >= 0) coeffs.emplace_back(bound_rows[k].second, r);
    }
    coeffs.emplace_back(cap_row[a], 1.0);
    lp.add_column(arc.cost, std::move(coeffs));
  }

  LpSolution s = lp.solve();
  if (s.status == LpStatus::Optimal) return s.objective;
  if (s.status == LpStatus::Infeasible) return kInf;
  throw NumericalFailure("compact relaxation did not solve to optimality");
}

}  // namespace acg
