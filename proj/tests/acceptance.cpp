// End-to-end acceptance runner. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Every tolerance is pinned here in code; wall
// times are printed for the record but only the stated budgets are enforced.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "acgpath/branch.hpp"
#include "acgpath/instance.hpp"
#include "acgpath/master.hpp"
#include "acgpath/oracle.hpp"
#include "acgpath/rng.hpp"
#include "support/random_lp.hpp"
#include "support/test_instances.hpp"

using namespace acg;
using namespace acg::testing;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-6;
constexpr double kGammaTol = 1e-9;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// First failure wins; later expectations still run but cannot overwrite it.
struct Check {
  bool ok = true;
  std::string why;
  std::string note;
  void expect(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why = msg;
    }
  }
};

// Observations shared by criteria 5 and 6: every CG run and every branch
// solve performed while executing criteria 1-4 lands here.
struct CgObservation {
  double lp;
  double lag;
  bool converged;
  bool infeasible_cert;
  double int_opt;  // +inf when the instance is unfeasible
};
std::vector<CgObservation> g_cg_runs;
std::vector<double> g_gamma_minima;

CgResult root_cg(const Graph& g, const std::vector<AtomicAlgorithm>& algs,
                 double int_opt) {
  MasterModel mm(g, algs);
  CgResult r = mm.cg_solve(ArcSet::all(g.num_arcs()),
                           Deadline::in(std::chrono::milliseconds(10000)));
  g_cg_runs.push_back({r.lp_value, r.lagrangian_bound,
                       r.status == CgStatus::Converged,
                       r.status == CgStatus::RootInfeasible, int_opt});
  g_gamma_minima.push_back(mm.stats().min_gamma_dual);
  return r;
}

Solution run_branch(const Graph& g, const std::vector<AtomicAlgorithm>& algs,
                    Variant v, int workers = 1) {
  SolverConfig cfg;
  cfg.variant = v;
  cfg.workers = workers;
  cfg.seed = 11;
  Solution s = solve(g, algs, cfg);
  g_gamma_minima.push_back(s.stats.min_gamma_dual);
  return s;
}

std::vector<double> plain_costs(const Graph& g) {
  std::vector<double> c(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) c[a] = g.arc(a).cost;
  return c;
}

std::vector<ConstraintSpec> p2_constraints() {
  return {ConstraintSpec::make_upper(0, 12.0),
          ConstraintSpec::make_upper(1, 9.0)};
}

std::vector<AtomicAlgorithm> p2_algorithms() {
  auto cons = p2_constraints();
  return {{{cons[0]}, false}, {{cons[1]}, false}};
}

// Instances retained from criterion 2 for the criterion 8 reruns.
struct KeptCase {
  Graph graph;
  std::vector<AtomicAlgorithm> algs;
  double opt;
};
std::vector<KeptCase> g_kept;

// ---------------------------------------------------------------------------

void crit1_p2_golden(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  Graph g = diamond();
  auto cons = p2_constraints();
  auto algs = p2_algorithms();

  double compact = compact_relaxation(g, cons);
  c.expect(std::abs(compact - 3.0) <= kTol,
           fmt("compact relaxation %.9g, want 3", compact));

  CgResult root = root_cg(g, algs, 4.0);
  c.expect(root.status == CgStatus::Converged, "root CG did not converge");
  c.expect(std::abs(root.lp_value - 4.0) <= kTol,
           fmt("root LP %.9g, want 4", root.lp_value));

  for (Variant v : {Variant::ACG, Variant::ACG1, Variant::ACGH, Variant::ACGR}) {
    Solution s = run_branch(g, algs, v, v == Variant::ACG ? 2 : 1);
    c.expect(s.status == SolveStatus::Optimal,
             fmt("variant %d not Optimal", int(v)));
    c.expect(std::abs(s.cost - 4.0) <= kTol,
             fmt("variant %d cost %.9g, want 4", int(v), s.cost));
    c.expect(s.path == Path{{kSU, kUT}}, fmt("variant %d wrong path", int(v)));
  }

  OracleResult en = enumerate_paths(g, cons);
  c.expect(en.feasible && std::abs(en.cost - 4.0) <= kTol,
           fmt("enumerate cost %.9g, want 4", en.cost));

  double el = seconds_since(t0);
  c.expect(el < 1.0, fmt("took %.2fs, budget 1s", el));
  c.note = fmt("compact 3, LP 4, integer 4 everywhere (%.2fs)", el);
}

void crit2_feasible_grids(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 200 && c.ok; ++i) {
    int w = 3 + i % 3;
    int h = 3 + (i / 3) % 3;
    int n_upper = i % 4;
    int n_range = (i / 4) % 3;
    bool include = i % 2 == 0;
    Graph base = grid(w, h, 9000 + i);
    Instance inst =
        gen_feasible(base, 3 + i % 4, 5000 + i, n_upper, n_range, include);

    OracleResult oracle = enumerate_paths(inst.graph, inst.constraints);
    c.expect(oracle.feasible, fmt("instance %d: generator not feasible", i));
    if (!oracle.feasible) break;

    auto algs = make_algorithms(inst);
    root_cg(inst.graph, algs, oracle.cost);

    struct Run { const char* name; Variant v; int workers; };
    for (auto [name, v, workers] : {Run{"ACG", Variant::ACG, 2},
                                    Run{"ACG1", Variant::ACG1, 1},
                                    Run{"ACGH", Variant::ACGH, 1}}) {
      Solution s = run_branch(inst.graph, algs, v, workers);
      c.expect(s.status == SolveStatus::Optimal && s.cost == oracle.cost,
               fmt("instance %d: %s cost %.9g, oracle %.9g", i, name, s.cost,
                   oracle.cost));
    }

    AtomicResult mp =
        multipulse(inst.graph, plain_costs(inst.graph), inst.constraints,
                   ArcSet::all(inst.graph.num_arcs()), Deadline::never());
    c.expect(mp.opt && inst.graph.evaluate(mp.path).cost == oracle.cost,
             fmt("instance %d: multipulse off oracle", i));

    if (i % 10 == 0) g_kept.push_back({inst.graph, algs, oracle.cost});
  }
  double el = seconds_since(t0);
  c.expect(el < 300.0, fmt("took %.1fs, budget 300s", el));
  c.note = fmt("200 instances, 4 solvers == oracle (%.1fs)", el);
}

void crit3_unfeasible_grids(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  int made = 0;
  std::uint64_t seed = 42;
  while (made < 50 && c.ok) {
    int w = 3 + made % 3;
    int h = 3 + (made / 3) % 3;
    Graph base = grid(w, h, 7000 + made);
    Instance inst;
    try {
      inst = gen_unfeasible(base, 4 + made % 3, seed++);
    } catch (const GenerationFailure&) {
      continue;  // topology refuses this seed; draw another
    }

    OracleResult joint = enumerate_paths(inst.graph, inst.constraints);
    c.expect(!joint.feasible, fmt("instance %d: oracle found a path", made));
    for (size_t k = 0; k < inst.constraints.size(); ++k) {
      OracleResult alone =
          enumerate_paths(inst.graph, std::span(&inst.constraints[k], 1));
      c.expect(alone.feasible,
               fmt("instance %d: constraint %zu unsatisfiable alone", made, k));
    }

    auto algs = make_algorithms(inst);
    root_cg(inst.graph, algs, kInf);

    struct Run { const char* name; Variant v; int workers; };
    for (auto [name, v, workers] : {Run{"ACG", Variant::ACG, 2},
                                    Run{"ACG1", Variant::ACG1, 1},
                                    Run{"ACGH", Variant::ACGH, 1}}) {
      Solution s = run_branch(inst.graph, algs, v, workers);
      c.expect(s.status == SolveStatus::Infeasible,
               fmt("instance %d: %s status %s", made, name,
                   status_name(s.status)));
    }
    AtomicResult mp =
        multipulse(inst.graph, plain_costs(inst.graph), inst.constraints,
                   ArcSet::all(inst.graph.num_arcs()), Deadline::never());
    c.expect(mp.unfeas, fmt("instance %d: multipulse no certificate", made));
    ++made;
  }
  double el = seconds_since(t0);
  c.expect(el < 300.0, fmt("took %.1fs, budget 300s", el));
  c.note = fmt("50 instances, conflict only jointly (%.1fs)", el);
}

// Layered DAG: s, `layers` ranks of `width` nodes, t; complete arcs between
// consecutive ranks. Two resources, one Upper and one Range constraint.
struct LayeredCase {
  Graph graph;
  std::vector<AtomicAlgorithm> algs;
  std::vector<ConstraintSpec> cons;
};

LayeredCase layered_case(std::uint64_t seed) {
  Rng rng(seed);
  int width = rng.uniform_int(2, 3);
  int layers = rng.uniform_int(1, 3);
  int nodes = 2 + layers * width;
  auto rank_node = [&](int r, int k) { return 1 + r * width + k; };
  std::vector<Arc> arcs;
  auto add = [&](int t, int h) {
    arcs.push_back(Arc{t, h, double(rng.uniform_int(1, 20)),
                       {double(rng.uniform_int(1, 10)),
                        double(rng.uniform_int(1, 10))}});
  };
  for (int k = 0; k < width; ++k) add(0, rank_node(0, k));
  for (int r = 0; r + 1 < layers; ++r)
    for (int a = 0; a < width; ++a)
      for (int b = 0; b < width; ++b) add(rank_node(r, a), rank_node(r + 1, b));
  for (int k = 0; k < width; ++k) add(rank_node(layers - 1, k), nodes - 1);

  LayeredCase lc{Graph::build(nodes, arcs, 0, nodes - 1, 2), {}, {}};
  int hops = layers + 1;
  double up = rng.uniform_int(4 * hops, 13 * hops);
  double lo = rng.uniform_int(2 * hops, 8 * hops);
  lc.cons = {ConstraintSpec::make_upper(0, up),
             ConstraintSpec::make_range(1, lo, lo + rng.uniform_int(2, 12))};
  lc.algs = {{{lc.cons[0]}, false}, {{lc.cons[1]}, false}};
  return lc;
}

void crit4_relaxation_sandwich(Check& c) {
  int strict = 0;
  auto probe = [&](const Graph& g, const std::vector<ConstraintSpec>& cons,
                   const std::vector<AtomicAlgorithm>& algs,
                   const std::string& label) {
    double compact = compact_relaxation(g, cons);
    OracleResult en = enumerate_paths(g, cons);
    double integer = en.feasible ? en.cost : kInf;
    CgResult root = root_cg(g, algs, integer);
    c.expect(root.status != CgStatus::DeadlineHit, label + ": CG timed out");
    // The master LP with positive dummies certifies emptiness; its true
    // value is +inf, matching the convention for compact and enumerate.
    double cg_lp =
        root.status == CgStatus::RootInfeasible ? kInf : root.lp_value;
    c.expect(compact <= cg_lp + kTol,
             label + fmt(": compact %.9g > DW %.9g", compact, cg_lp));
    c.expect(cg_lp <= integer + kTol,
             label + fmt(": DW %.9g > integer %.9g", cg_lp, integer));
    if (compact < cg_lp - kTol && cg_lp < kInf) ++strict;
  };

  probe(diamond(), p2_constraints(), p2_algorithms(), "p2");
  for (std::uint64_t seed = 600; seed < 700 && c.ok; ++seed) {
    LayeredCase lc = layered_case(seed);
    probe(lc.graph, lc.cons, lc.algs, fmt("seed %llu", (unsigned long long)seed));
  }
  c.expect(strict >= 1, "no instance with compact strictly below DW");
  c.note = fmt("101 instances sandwiched, %d strict", strict);
}

void crit5_lagrangian_soundness(Check& c) {
  c.expect(!g_cg_runs.empty(), "no CG runs recorded");
  int converged = 0;
  for (size_t i = 0; i < g_cg_runs.size(); ++i) {
    const CgObservation& o = g_cg_runs[i];
    if (o.infeasible_cert) {
      // bound +inf stands for the emptiness certificate; the instance must
      // really be unfeasible for it to be sound
      c.expect(o.int_opt == kInf,
               fmt("run %zu: infeasibility cert on feasible instance", i));
      continue;
    }
    c.expect(o.lag <= o.lp + kTol,
             fmt("run %zu: bound %.9g above LP %.9g", i, o.lag, o.lp));
    c.expect(o.lag <= o.int_opt + kTol,
             fmt("run %zu: bound %.9g above optimum %.9g", i, o.lag, o.int_opt));
    if (o.converged) {
      ++converged;
      c.expect(std::abs(o.lag - o.lp) <= kTol,
               fmt("run %zu: converged gap %.3g", i, std::abs(o.lag - o.lp)));
    }
  }
  c.note = fmt("%zu CG runs, %d converged with bound == LP", g_cg_runs.size(),
               converged);
}

void crit6_gamma_sign(Check& c) {
  c.expect(!g_gamma_minima.empty(), "no pricing runs recorded");
  double worst = 0.0;
  for (double v : g_gamma_minima) worst = std::min(worst, v);
  c.expect(worst >= -kGammaTol, fmt("gamma dual %.3g below -1e-9", worst));
  c.note = fmt("%zu solver runs, most negative gamma %.3g",
               g_gamma_minima.size(), worst);
}

void crit7_lp_suite(Check& c) {
  // draws continue until 100 optimal cases carry full certificates; the
  // infeasible/unbounded draws in between still must agree on status
  int optimal = 0;
  int drawn = 0;
  for (std::uint64_t seed = 1; optimal < 100 && c.ok; ++seed) {
    ++drawn;
    LpPair p = random_lp(seed);
    lpref::Result want = p.ref.solve();
    LpSolution got = p.lp.solve();

    bool statuses_agree =
        (want.status == lpref::Result::kOptimal &&
         got.status == LpStatus::Optimal) ||
        (want.status == lpref::Result::kInfeasible &&
         got.status == LpStatus::Infeasible) ||
        (want.status == lpref::Result::kUnbounded &&
         got.status == LpStatus::Unbounded);
    c.expect(statuses_agree, fmt("seed %llu: status mismatch",
                                 (unsigned long long)seed));
    if (got.status != LpStatus::Optimal) continue;
    ++optimal;

    int n = int(p.ref.c.size());
    int m = int(p.ref.rows.size());
    double scale = 1.0 + std::abs(got.objective);
    c.expect(std::abs(got.objective - want.objective) <= kTol * scale,
             fmt("seed %llu: objective %.9g vs reference %.9g",
                 (unsigned long long)seed, got.objective, want.objective));

    double dual_obj = 0.0;
    for (int i = 0; i < m; ++i) dual_obj += got.duals[i] * p.ref.rows[i].rhs;
    c.expect(std::abs(dual_obj - got.objective) <= kTol * scale,
             fmt("seed %llu: strong duality gap %.3g",
                 (unsigned long long)seed, std::abs(dual_obj - got.objective)));

    for (int i = 0; i < m; ++i) {
      double act = 0.0;
      for (int j = 0; j < n; ++j) act += p.ref.rows[i].a[j] * got.primal[j];
      c.expect(std::abs(got.duals[i] * (act - p.ref.rows[i].rhs)) <=
                   kTol * (1.0 + std::abs(p.ref.rows[i].rhs)),
               fmt("seed %llu: row %d slackness", (unsigned long long)seed, i));
    }
    for (int j = 0; j < n; ++j) {
      double rc = p.ref.c[j];
      for (int i = 0; i < m; ++i) rc -= p.ref.rows[i].a[j] * got.duals[i];
      c.expect(std::abs(rc * got.primal[j]) <= kTol * scale,
               fmt("seed %llu: column %d slackness", (unsigned long long)seed,
                   j));
    }

    // Reconvergence after solving in the fixed state is a unit-suite matter
    // (1e-6 there); the involution itself must restore the model exactly,
    // and a deterministic replay of an unchanged model is bit-identical.
    for (int j = 0; j < n; ++j) {
      p.lp.fix(j, 0.0);
      p.lp.unfix(j);
      LpSolution back = p.lp.solve();
      c.expect(back.status == LpStatus::Optimal &&
                   back.objective == got.objective,
               fmt("seed %llu: fix/unfix of column %d moved objective "
                   "%.17g -> %.17g",
                   (unsigned long long)seed, j, got.objective, back.objective));
    }
  }
  c.note = fmt("%d optimal LPs certified vs dense reference (%d drawn)",
               optimal, drawn);
}

void crit8_determinism(Check& c) {
  c.expect(!g_kept.empty(), "criterion 2 kept no instances");
  for (size_t k = 0; k < g_kept.size() && c.ok; ++k) {
    const KeptCase& kc = g_kept[k];
    Solution first = run_branch(kc.graph, kc.algs, Variant::ACG1);
    for (int rep = 1; rep < 5; ++rep) {
      Solution again = run_branch(kc.graph, kc.algs, Variant::ACG1);
      c.expect(again.cost == first.cost && again.path == first.path &&
                   again.stats.nodes_expanded == first.stats.nodes_expanded,
               fmt("instance %zu: ACG1 rerun %d diverged", k, rep));
    }
    Solution par = run_branch(kc.graph, kc.algs, Variant::ACG, 8);
    c.expect(par.status == SolveStatus::Optimal && par.cost == kc.opt,
             fmt("instance %zu: 8-worker cost %.9g, want %.9g", k, par.cost,
                 kc.opt));
  }
  c.note = fmt("%zu instances, 5 identical ACG1 runs + 8-worker match",
               g_kept.size());
}

void crit9_scale_smoke(Check& c) {
  Graph base = grid(31, 31, 31);
  c.expect(base.num_nodes() == 961 && base.num_arcs() == 3720,
           fmt("grid is %d/%d, want 961/3720", base.num_nodes(),
               base.num_arcs()));
  Instance inst = gen_feasible(base, 15, 31, 3, 3, true);
  c.expect(inst.constraints.size() == 7, "want 3 Upper + 3 Range + 1 Include");
  auto algs = make_algorithms(inst);

  SolverConfig cfg;
  cfg.variant = Variant::ACG;
  cfg.workers = 4;
  auto t0 = std::chrono::steady_clock::now();
  Solution s = solve(inst.graph, algs, cfg);
  double acg_s = seconds_since(t0);
  c.expect(s.status == SolveStatus::Optimal,
           fmt("ACG status %s after %.1fs", status_name(s.status), acg_s));

  t0 = std::chrono::steady_clock::now();
  AtomicResult mp =
      multipulse(inst.graph, plain_costs(inst.graph), inst.constraints,
                 ArcSet::all(inst.graph.num_arcs()),
                 Deadline::in(std::chrono::milliseconds(120000)));
  double mp_s = seconds_since(t0);
  c.expect(mp.opt, fmt("multipulse not optimal after %.1fs", mp_s));
  if (s.status == SolveStatus::Optimal && mp.opt)
    c.expect(inst.graph.evaluate(mp.path).cost == s.cost,
             fmt("ACG %.9g vs multipulse %.9g", s.cost,
                 inst.graph.evaluate(mp.path).cost));
  c.note = fmt("cost %.9g; ACG %.1fs, multipulse %.1fs", s.cost, acg_s, mp_s);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*body)(Check&);
  };
  const Criterion criteria[] = {
      {"P2 golden values", crit1_p2_golden},
      {"oracle equivalence, feasible grids", crit2_feasible_grids},
      {"oracle equivalence, unfeasible grids", crit3_unfeasible_grids},
      {"relaxation sandwich on layered DAGs", crit4_relaxation_sandwich},
      {"Lagrangian bound soundness", crit5_lagrangian_soundness},
      {"gamma dual sign on every pricing call", crit6_gamma_sign},
      {"LP certificates vs dense reference", crit7_lp_suite},
      {"determinism and parallel equivalence", crit8_determinism},
      {"31x31 scale smoke", crit9_scale_smoke},
  };

  int failed = 0;
  int id = 0;
  for (const Criterion& cr : criteria) {
    ++id;
    Check c;
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    if (c.ok) {
      std::printf("PASS  %d  %s: %s\n", id, cr.name, c.note.c_str());
    } else {
      ++failed;
      std::printf("FAIL  %d  %s: %s\n", id, cr.name, c.why.c_str());
    }
    std::fflush(stdout);
  }
  if (failed) std::printf("acceptance: %d criteria failed\n", failed);
  else std::printf("acceptance: all 9 criteria passed\n");
  return failed ? 1 : 0;
}
