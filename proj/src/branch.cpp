#include "acgpath/branch.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <queue>
#include <thread>
#include <utility>

#include "acgpath/errors.hpp"

namespace acg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPruneTol = 1e-9;

std::vector<double> original_costs(const Graph& g) {
  std::vector<double> c(g.num_arcs());
  for (int a = 0; a < g.num_arcs(); ++a) c[a] = g.arc(a).cost;
  return c;
}

int prefix_end(const Graph& g, const Path& p) {
  return p.empty() ? g.source() : g.arc(p.arcs.back()).head;
}

// Mutexes are null in single-threaded variants.
struct Sync {
  std::mutex* inc = nullptr;
  std::mutex* mm = nullptr;
  std::mutex* stats = nullptr;
};

std::unique_lock<std::mutex> maybe_lock(std::mutex* mu) {
  return mu ? std::unique_lock<std::mutex>(*mu) : std::unique_lock<std::mutex>();
}

bool offer_incumbent(Incumbent& inc, const Path& path, double cost,
                     std::mutex* mu) {
  auto lk = maybe_lock(mu);
  if (cost < inc.cost) {
    inc.path = path;
    inc.cost = cost;
    return true;
  }
  return false;
}

double incumbent_cost(const Incumbent& inc, std::mutex* mu) {
  auto lk = maybe_lock(mu);
  return inc.cost;
}

void bump(long& counter, std::mutex* mu) {
  auto lk = maybe_lock(mu);
  ++counter;
}

void update_impl(BranchState& b, Incumbent& inc, MasterModel& mm,
                 const SolverConfig& cfg, Deadline global, SolveStats& stats,
                 const Sync& sync) {
  const Graph& g = mm.graph();
  std::vector<double> costs = original_costs(g);
  int end = prefix_end(g, b.p);

  auto dist = dijkstra(g, costs, end, /*reversed=*/false, &b.allowed);
  if (dist[g.target()] >= kInf) {
    b.l = kInf;
    return;
  }
  b.l = std::max(b.l, b.c + dist[g.target()]);

  const auto& algs = mm.algorithms();
  double best_direction =
      b.p_plus.empty() ? kInf : g.evaluate(b.p_plus).cost;
  for (std::size_t i = 0; i < algs.size(); ++i) {
    Deadline sub = Deadline::in(cfg.t_atomic).earlier_of(global);
    AtomicResult r = atomic_solve(g, algs[i], costs, b.allowed, sub);
    bump(stats.atomic_calls, sync.stats);
    if (r.unfeas) {
      b.l = kInf;
      return;
    }
    if (r.path.empty()) continue;
    PathMetrics pm = g.evaluate(r.path);
    bool feasible_all = true;
    for (std::size_t j = 0; j < algs.size(); ++j) {
      if (j != i && !check(g, algs[j], r.path)) {
        feasible_all = false;
        break;
      }
    }
    if (r.opt) {
      b.l = std::max(b.l, pm.cost);
      if (feasible_all) {
        // the subtree optimum is in hand: record it and close the node
        offer_incumbent(inc, r.path, pm.cost, sync.inc);
        return;
      }
    } else if (feasible_all) {
      offer_incumbent(inc, r.path, pm.cost, sync.inc);
      if (pm.cost < best_direction) {
        best_direction = pm.cost;
        b.p_plus = r.path;
      }
    }
  }

  double ratio = double(b.allowed.count()) / double(g.num_arcs());
  if (ratio <= cfg.gamma_ratio) {
    auto lk = maybe_lock(sync.mm);
    CgResult cg = mm.cg_solve(b.allowed, Deadline::in(cfg.t_acg).earlier_of(global));
    b.l = std::max(b.l, cg.lagrangian_bound);
    if (!cg.feasible_path.empty()) {
      offer_incumbent(inc, cg.feasible_path, cg.feasible_cost, sync.inc);
      if (cg.feasible_cost < best_direction) b.p_plus = cg.feasible_path;
    }
  }
}

struct WorseOrder {
  bool operator()(const BranchState& a, const BranchState& b) const {
    if (a.l != b.l) return a.l > b.l;
    if (a.p.size() != b.p.size()) return a.p.size() < b.p.size();
    return a.seq > b.seq;
  }
};

using OpenQueue =
    std::priority_queue<BranchState, std::vector<BranchState>, WorseOrder>;

// Children along the known feasible direction inherit the bound untouched;
// the rest go through update_impl before the push test.
std::vector<BranchState> expand(const BranchState& b, Incumbent& inc,
                                MasterModel& mm, const SolverConfig& cfg,
                                Deadline global, SolveStats& stats,
                                const Sync& sync) {
  const Graph& g = mm.graph();
  std::vector<BranchState> kids;
  int end = prefix_end(g, b.p);
  for (int a : g.out_arcs(end)) {
    if (!b.allowed.contains(a)) continue;
    BranchState child;
    child.c = b.c + g.arc(a).cost;
    child.p = b.p;
    child.p.arcs.push_back(a);
    child.allowed = filter(g, b.allowed, a, b.p);
    child.l = b.l;
    bool on_direction = b.p_plus.size() > b.p.size() &&
                        b.p_plus.arcs[b.p.size()] == a;
    if (on_direction) {
      child.p_plus = b.p_plus;
    } else {
      update_impl(child, inc, mm, cfg, global, stats, sync);
    }
    if (child.l < incumbent_cost(inc, sync.inc)) kids.push_back(std::move(child));
  }
  return kids;
}

Solution run_single(MasterModel& mm, const SolverConfig& cfg, Deadline global,
                    Incumbent& inc, SolveStats& stats, BranchState root) {
  const Graph& g = mm.graph();
  OpenQueue open;
  std::uint64_t next_seq = 1;
  if (root.l < inc.cost) open.push(std::move(root));

  Solution sol;
  bool timed_out = false;
  while (!open.empty()) {
    if (global.expired()) {
      timed_out = true;
      break;
    }
    BranchState b = open.top();
    open.pop();
    if (b.l >= inc.cost - kPruneTol) continue;
    if (prefix_end(g, b.p) == g.target()) continue;
    ++stats.nodes_expanded;
    for (auto& child :
         expand(b, inc, mm, cfg, global, stats, Sync{})) {
      child.seq = next_seq++;
      open.push(std::move(child));
    }
  }

  if (timed_out) {
    double lb = inc.cost;
    while (!open.empty()) {
      lb = std::min(lb, open.top().l);
      open.pop();
    }
    sol.status = SolveStatus::TimeLimit;
    sol.lower_bound = lb;
  } else if (inc.path.empty()) {
    sol.status = SolveStatus::Infeasible;
    sol.lower_bound = kInf;
  } else {
    sol.status = SolveStatus::Optimal;
    sol.lower_bound = inc.cost;
  }
  sol.path = inc.path;
  sol.cost = inc.cost;
  return sol;
}

Solution run_parallel(MasterModel& mm, const SolverConfig& cfg, Deadline global,
                      Incumbent& inc, SolveStats& stats, BranchState root) {
  const Graph& g = mm.graph();
  OpenQueue open;
  std::uint64_t next_seq = 1;
  if (root.l < inc.cost) open.push(std::move(root));

  std::mutex q_mu, inc_mu, mm_mu, stats_mu;
  std::condition_variable cv;
  int busy = 0;
  bool stop = false;
  bool timed_out = false;
  Sync sync{&inc_mu, &mm_mu, &stats_mu};

  auto worker = [&] {
    std::unique_lock<std::mutex> lk(q_mu);
    for (;;) {
      cv.wait(lk, [&] { return stop || !open.empty() || busy == 0; });
      if (stop) return;
      if (open.empty()) {
        if (busy == 0) {
          stop = true;
          cv.notify_all();
          return;
        }
        continue;
      }
      if (global.expired()) {
        timed_out = true;
        stop = true;
        cv.notify_all();
        return;
      }
      BranchState b = open.top();
      open.pop();
      ++busy;
      lk.unlock();

      std::vector<BranchState> kids;
      if (b.l < incumbent_cost(inc, &inc_mu) - kPruneTol &&
          prefix_end(g, b.p) != g.target()) {
        bump(stats.nodes_expanded, &stats_mu);
        kids = expand(b, inc, mm, cfg, global, stats, sync);
      }

      lk.lock();
      for (auto& k : kids) {
        k.seq = next_seq++;
        open.push(std::move(k));
      }
      --busy;
      cv.notify_all();
    }
  };

  int n = std::max(1, cfg.workers);
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  Solution sol;
  if (timed_out) {
    double lb = inc.cost;
    while (!open.empty()) {
      lb = std::min(lb, open.top().l);
      open.pop();
    }
    sol.status = SolveStatus::TimeLimit;
    sol.lower_bound = lb;
  } else if (inc.path.empty()) {
    sol.status = SolveStatus::Infeasible;
    sol.lower_bound = kInf;
  } else {
    sol.status = SolveStatus::Optimal;
    sol.lower_bound = inc.cost;
  }
  sol.path = inc.path;
  sol.cost = inc.cost;
  return sol;
}

}  // namespace

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "Optimal";
    case SolveStatus::Infeasible:
      return "Infeasible";
    case SolveStatus::TimeLimit:
      return "TimeLimit";
  }
  return "TimeLimit";
}

ArcSet filter(const Graph& g, const ArcSet& allowed, int chosen,
              const Path& prefix) {
  if (chosen < 0 || chosen >= g.num_arcs() || !allowed.contains(chosen))
    throw ArcNotEligible("chosen arc is not in the eligible set");
  const Arc& ch = g.arc(chosen);
  if (ch.tail != prefix_end(g, prefix))
    throw ArcNotEligible("chosen arc does not extend the prefix");

  ArcSet out = allowed;
  for (int a : g.out_arcs(ch.tail))
    if (a != chosen) out.remove(a);
  for (int a : g.in_arcs(ch.head))
    if (a != chosen) out.remove(a);

  std::vector<char> on_prefix(g.num_nodes(), 0);
  std::vector<char> prefix_arc(g.num_arcs(), 0);
  on_prefix[g.source()] = 1;
  for (int a : prefix.arcs) {
    on_prefix[g.arc(a).head] = 1;
    prefix_arc[a] = 1;
  }
  for (int v = 0; v < g.num_nodes(); ++v) {
    if (!on_prefix[v]) continue;
    for (int a : g.in_arcs(v))
      if (!prefix_arc[a]) out.remove(a);
  }
  return out;
}

void update_state(BranchState& b, Incumbent& inc, MasterModel& mm,
                  const SolverConfig& cfg, Deadline global, SolveStats& stats) {
  update_impl(b, inc, mm, cfg, global, stats, Sync{});
}

Solution solve(const Graph& g, std::vector<AtomicAlgorithm> algs,
               const SolverConfig& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  for (auto& alg : algs) alg.heuristic_mode = (cfg.variant == Variant::ACGH);

  MasterModel mm(g, algs, cfg.t_atomic);
  Deadline global = Deadline::in(cfg.global_limit);
  SolveStats stats;
  Incumbent inc;

  CgResult root_cg =
      mm.cg_solve(ArcSet::all(g.num_arcs()), Deadline::in(cfg.t_acg).earlier_of(global));
  if (!root_cg.feasible_path.empty())
    offer_incumbent(inc, root_cg.feasible_path, root_cg.feasible_cost, nullptr);

  auto finalize = [&](Solution sol) {
    sol.stats = stats;
    sol.stats.columns = mm.stats().columns_added;
    sol.stats.cg_calls = mm.stats().cg_calls;
    sol.stats.atomic_calls += mm.stats().pricing_calls;
    sol.stats.min_gamma_dual = mm.stats().min_gamma_dual;
    sol.stats.wall_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t_start)
                            .count();
    return sol;
  };

  if (cfg.variant == Variant::ACGR) {
    Solution sol;
    sol.path = inc.path;
    sol.cost = inc.cost;
    sol.lower_bound = root_cg.lagrangian_bound;
    if (root_cg.status == CgStatus::RootInfeasible) {
      sol.status = SolveStatus::Infeasible;
      sol.lower_bound = kInf;
    } else if (!inc.path.empty() &&
               std::abs(inc.cost - root_cg.lagrangian_bound) <= 1e-6) {
      sol.status = SolveStatus::Optimal;
    } else {
      sol.status = SolveStatus::TimeLimit;
    }
    return finalize(sol);
  }

  if (root_cg.status == CgStatus::RootInfeasible) {
    Solution sol;
    sol.status = SolveStatus::Infeasible;
    sol.lower_bound = kInf;
    return finalize(sol);
  }

  BranchState root;
  root.allowed = ArcSet::all(g.num_arcs());
  root.p_plus = root_cg.feasible_path;
  root.l = root_cg.lagrangian_bound;

  if (cfg.variant == Variant::ACG && cfg.workers > 1)
    return finalize(
        run_parallel(mm, cfg, global, inc, stats, std::move(root)));
  return finalize(run_single(mm, cfg, global, inc, stats, std::move(root)));
}

}  // namespace acg
