#include <doctest.h>

#include <cmath>
#include <limits>

#include "acgpath/atomic.hpp"
#include "support/test_instances.hpp"

using namespace acg;
using namespace acg::testing;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> original_costs(const Graph& g) {
  std::vector<double> c(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) c[a] = g.arc(a).cost;
  return c;
}
}  // namespace

TEST_SUITE_BEGIN("atomic");

TEST_CASE("dijkstra on the diamond") {
  Graph g = diamond();
  auto costs = original_costs(g);
  auto dist = dijkstra(g, costs, g.source(), false);
  CHECK(dist[0] == 0.0);
  CHECK(dist[1] == 2.0);
  CHECK(dist[2] == 1.0);
  CHECK(dist[3] == 2.0);  // via sv, vt

  auto rdist = dijkstra(g, costs, g.target(), true);
  CHECK(rdist[3] == 0.0);
  CHECK(rdist[1] == 2.0);
  CHECK(rdist[0] == 2.0);

  costs[kSV] = -1.0;
  CHECK_THROWS_AS(dijkstra(g, costs, 0, false), NegativeCost);
}

TEST_CASE("dijkstra respects the allowed set and reports unreachable") {
  Graph g = diamond();
  auto costs = original_costs(g);
  ArcSet allowed = ArcSet::all(g.num_arcs());
  allowed.remove(kSV);
  auto dist = dijkstra(g, costs, 0, false, &allowed);
  CHECK(dist[2] == kInf);
  CHECK(dist[3] == 4.0);  // forced through u
}

TEST_CASE("constraint windows") {
  ConstraintSpec u = ConstraintSpec::make_upper(1, 9.0);
  CHECK(u.satisfied({0.0, 6.0}));
  CHECK_FALSE(u.satisfied({0.0, 12.0}));
  CHECK_FALSE(u.has_lower());

  ConstraintSpec r = ConstraintSpec::make_range(0, 13.0, 20.0);
  CHECK_FALSE(r.satisfied({12.0, 0.0}));
  CHECK(r.satisfied({13.0, 0.0}));
  CHECK(r.has_lower());

  ConstraintSpec inc = ConstraintSpec::make_include(1, 7);
  CHECK(inc.lower == 1.0);
  CHECK(inc.upper == 1.0);
  CHECK(inc.node == 7);
}

TEST_CASE("check evaluates structural and resource feasibility") {
  Graph g = diamond();
  AtomicAlgorithm alg{{ConstraintSpec::make_upper(1, 9.0)}, false};
  CHECK(check(g, alg, Path{{kSU, kUT}}));
  CHECK_FALSE(check(g, alg, Path{{kSV, kVT}}));  // totals (12,12), 12 > 9
  CHECK_FALSE(check(g, alg, Path{{kSU}}));       // not s-t
  CHECK_FALSE(check(g, alg, Path{}));
}

TEST_CASE("check of include constraints uses the unit-resource encoding") {
  // diamond plus an include resource marking node u: value 1 on arcs out of u
  Graph g = Graph::build(4,
                         {{0, 1, 2.0, {3.0, 3.0, 0.0}},
                          {1, 3, 2.0, {3.0, 3.0, 1.0}},
                          {0, 2, 1.0, {6.0, 6.0, 0.0}},
                          {2, 3, 1.0, {6.0, 6.0, 0.0}}},
                         0, 3, 3);
  AtomicAlgorithm alg{{ConstraintSpec::make_include(2, 1)}, false};
  CHECK(check(g, alg, Path{{kSU, kUT}}));
  CHECK_FALSE(check(g, alg, Path{{kSV, kVT}}));  // total 0 != 1
}

TEST_CASE("pulse_preprocess computes reverse minima") {
  Graph g = diamond();
  auto costs = original_costs(g);
  std::vector<ConstraintSpec> cons{ConstraintSpec::make_upper(1, 9.0)};
  PulseBounds b = pulse_preprocess(g, costs, cons, ArcSet::all(4));
  CHECK(b.min_cost_to_t[1] == 2.0);
  CHECK(b.min_cost_to_t[3] == 0.0);
  CHECK(b.min_resource_to_t[1][1] == 3.0);
  CHECK(b.min_resource_to_t[1][3] == 0.0);
  CHECK(b.min_resource_to_t[0].empty());  // unconstrained metric skipped
}

TEST_CASE("pulse_next_arc prefers gap reduction under unmet lower bounds") {
  Graph g = diamond();
  auto costs = original_costs(g);
  std::vector<ConstraintSpec> cons{ConstraintSpec::make_range(0, 10.0, 30.0)};
  PulseBounds b = pulse_preprocess(g, costs, cons, ArcSet::all(4));
  std::vector<double> consumed{0.0, 0.0};
  std::vector<int> cands{kSU, kSV};
  // gaps after arc: su -> 10-3=7, sv -> 10-6=4: sv first
  auto ordered = pulse_next_arc(g, consumed, cands, cons, costs, b);
  CHECK(ordered == std::vector<int>{kSV, kSU});

  // lower bounds met: shortest-path order, sv (1+1) before su (2+2)
  consumed = {15.0, 0.0};
  ordered = pulse_next_arc(g, consumed, cands, cons, costs, b);
  CHECK(ordered == std::vector<int>{kSV, kSU});

  // ties break on arc id
  std::vector<ConstraintSpec> none;
  PulseBounds b2 = pulse_preprocess(g, std::vector<double>(4, 1.0), none,
                                    ArcSet::all(4));
  ordered = pulse_next_arc(g, consumed, cands, none,
                           std::vector<double>(4, 1.0), b2);
  CHECK(ordered == std::vector<int>{kSU, kSV});

  // single candidate stays put
  std::vector<int> one{kUT};
  ordered = pulse_next_arc(g, consumed, one, cons, costs, b);
  CHECK(ordered == std::vector<int>{kUT});
}

TEST_CASE("multipulse solves the diamond exactly") {
  Graph g = diamond();
  auto costs = original_costs(g);
  ArcSet all = ArcSet::all(4);

  SUBCASE("both uppers force the expensive path") {
    std::vector<ConstraintSpec> cons{ConstraintSpec::make_upper(0, 12.0),
                                     ConstraintSpec::make_upper(1, 9.0)};
    AtomicResult r = multipulse(g, costs, cons, all, Deadline::never());
    CHECK(r.opt);
    CHECK_FALSE(r.unfeas);
    CHECK(r.path == Path{{kSU, kUT}});
    CHECK(g.evaluate(r.path).cost == 4.0);
  }
  SUBCASE("no constraints gives the shortest path") {
    AtomicResult r = multipulse(g, costs, {}, all, Deadline::never());
    CHECK(r.opt);
    CHECK(r.path == Path{{kSV, kVT}});
  }
  SUBCASE("upper r1<=12 alone picks the cheap path") {
    std::vector<ConstraintSpec> cons{ConstraintSpec::make_upper(0, 12.0)};
    AtomicResult r = multipulse(g, costs, cons, all, Deadline::never());
    CHECK(r.opt);
    CHECK(r.path == Path{{kSV, kVT}});
  }
  SUBCASE("upper r2<=9 alone forces su,ut") {
    std::vector<ConstraintSpec> cons{ConstraintSpec::make_upper(1, 9.0)};
    AtomicResult r = multipulse(g, costs, cons, all, Deadline::never());
    CHECK(r.opt);
    CHECK(r.path == Path{{kSU, kUT}});
  }
  SUBCASE("unmeetable range certifies unfeasibility") {
    std::vector<ConstraintSpec> cons{ConstraintSpec::make_range(0, 13.0, 20.0)};
    AtomicResult r = multipulse(g, costs, cons, all, Deadline::never());
    CHECK(r.unfeas);
    CHECK_FALSE(r.opt);
    CHECK(r.path.empty());
  }
  SUBCASE("restricted arc set") {
    ArcSet restricted = ArcSet::all(4);
    restricted.remove(kSV);
    AtomicResult r = multipulse(g, costs, {}, restricted, Deadline::never());
    CHECK(r.opt);
    CHECK(r.path == Path{{kSU, kUT}});
  }
}

TEST_CASE("multipulse honors a meetable range via direction rule") {
  Graph g = diamond();
  auto costs = original_costs(g);
  std::vector<ConstraintSpec> cons{ConstraintSpec::make_range(0, 10.0, 12.0)};
  AtomicResult r = multipulse(g, costs, cons, ArcSet::all(4), Deadline::never());
  CHECK(r.opt);
  CHECK(r.path == Path{{kSV, kVT}});  // totals 12 within [10,12], cost 2
}

TEST_CASE("expired deadline yields no certificates") {
  Graph g = diamond();
  auto costs = original_costs(g);
  Deadline past = Deadline::in(std::chrono::milliseconds(0));
  long expansions = 0;
  AtomicResult r = multipulse(g, costs, {}, ArcSet::all(4), past, &expansions);
  CHECK_FALSE(r.opt);
  CHECK_FALSE(r.unfeas);
}

TEST_CASE("single st path detection") {
  Graph g = diamond();
  CHECK_FALSE(is_single_st_path(g, ArcSet::all(4)));
  ArcSet chain = ArcSet::none(4);
  chain.insert(kSU);
  chain.insert(kUT);
  CHECK(is_single_st_path(g, chain));
  chain.insert(kVT);  // stray arc
  CHECK_FALSE(is_single_st_path(g, chain));
  ArcSet dead = ArcSet::none(4);
  dead.insert(kSU);
  CHECK_FALSE(is_single_st_path(g, dead));
}

TEST_CASE("atomic_solve certificates and heuristic masking") {
  Graph g = diamond();
  auto costs = original_costs(g);
  ArcSet all = ArcSet::all(4);

  AtomicAlgorithm exact{{ConstraintSpec::make_upper(1, 9.0)}, false};
  AtomicResult r = atomic_solve(g, exact, costs, all, Deadline::never());
  CHECK(r.opt);
  CHECK(r.path == Path{{kSU, kUT}});

  AtomicAlgorithm heur = exact;
  heur.heuristic_mode = true;
  AtomicResult h = atomic_solve(g, heur, costs, all, Deadline::never());
  CHECK_FALSE(h.opt);
  CHECK_FALSE(h.unfeas);
  CHECK(h.path == r.path);  // the path itself is unchanged

  // single-path allowed set: certificates come back even in heuristic mode
  ArcSet chain = ArcSet::none(4);
  chain.insert(kSU);
  chain.insert(kUT);
  AtomicResult hs = atomic_solve(g, heur, costs, chain, Deadline::never());
  CHECK(hs.opt);

  AtomicAlgorithm impossible{{ConstraintSpec::make_range(0, 13.0, 20.0)}, true};
  AtomicResult hu = atomic_solve(g, impossible, costs, chain, Deadline::never());
  CHECK(hu.unfeas);
}

TEST_SUITE_END();
