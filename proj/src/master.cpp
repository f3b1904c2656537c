#include "acgpath/master.hpp"

#include <algorithm>
#include <cmath>

namespace acg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRcAccept = -1e-6;
}

MasterModel::MasterModel(const Graph& g, std::vector<AtomicAlgorithm> algs,
                         std::chrono::milliseconds t_atomic)
    : g_(&g), algs_(std::move(algs)), t_atomic_(t_atomic) {
  if (algs_.empty()) throw EmptyAtomicSet("master needs at least one algorithm");
  int m = g.num_arcs();
  int k = static_cast<int>(algs_.size());
  big_m_ = m * g.max_arc_cost() + 1.0;

  outdeg_base_ = 0;
  for (int u = 0; u < g.num_nodes(); ++u) lp_.add_row(RowSense::LE, 1.0);
  conv_base_ = g.num_nodes();
  for (int a = 0; a < k; ++a) lp_.add_row(RowSense::EQ, 1.0);
  link_base_ = conv_base_ + k;
  for (int a = 0; a < k; ++a)
    for (int arc = 0; arc < m; ++arc) lp_.add_row(RowSense::GE, 0.0);

  for (int arc = 0; arc < m; ++arc) {
    std::vector<std::pair<int, double>> coeffs;
    coeffs.reserve(1 + k);
    coeffs.emplace_back(outdeg_row(g.arc(arc).tail), 1.0);
    for (int a = 0; a < k; ++a) coeffs.emplace_back(link_row(a, arc), 1.0);
    lp_.add_column(g.arc(arc).cost, std::move(coeffs));
  }
  for (int a = 0; a < k; ++a) {
    int id = lp_.add_column(big_m_, {{conv_row(a), 1.0}});
    dummy_ids_.push_back(id);
    pool_.push_back(Column{a, Path{}, id, true});
  }
}

PriceOutcome MasterModel::price_full(int alg, const LpSolution& duals,
                                     const ArcSet& allowed, Deadline deadline) {
  stats_.pricing_calls++;
  int m = g_->num_arcs();
  std::vector<double> costs(m, 0.0);
  for (int arc = 0; arc < m; ++arc) {
    double gamma = duals.duals[link_row(alg, arc)];
    if (gamma < stats_.min_gamma_dual) stats_.min_gamma_dual = gamma;
    costs[arc] = std::max(0.0, gamma);
  }
  double beta = duals.duals[conv_row(alg)];

  PriceOutcome out;
  out.atomic = atomic_solve(*g_, algs_[alg], costs, allowed, deadline);
  out.certified = out.atomic.opt;
  if (out.atomic.path.empty()) return out;

  double sum = 0.0;
  for (int a : out.atomic.path.arcs) sum += costs[a];
  out.reduced_cost = sum - beta;
  if (out.reduced_cost >= kRcAccept) return out;

  auto key = std::make_pair(alg, out.atomic.path.arcs);
  if (dedup_.count(key)) return out;

  std::vector<std::pair<int, double>> coeffs;
  coeffs.reserve(1 + out.atomic.path.size());
  coeffs.emplace_back(conv_row(alg), 1.0);
  for (int a : out.atomic.path.arcs) coeffs.emplace_back(link_row(alg, a), -1.0);
  int id = lp_.add_column(0.0, std::move(coeffs));
  dedup_.insert(std::move(key));
  pool_.push_back(Column{alg, out.atomic.path, id, false});
  out.column_index = static_cast<int>(pool_.size()) - 1;
  stats_.columns_added++;
  return out;
}

std::optional<Column> MasterModel::price(int alg, const LpSolution& duals,
                                         const ArcSet& allowed,
                                         Deadline deadline) {
  PriceOutcome out = price_full(alg, duals, allowed, deadline);
  if (out.column_index < 0) return std::nullopt;
  return pool_[out.column_index];
}

CgResult MasterModel::cg_solve(const ArcSet& allowed, Deadline deadline) {
  stats_.cg_calls++;
  int m = g_->num_arcs();
  int k = static_cast<int>(algs_.size());

  std::vector<int> fixed;
  for (int arc = 0; arc < m; ++arc)
    if (!allowed.contains(arc) && !lp_.is_fixed(arc)) {
      lp_.fix(arc, 0.0);
      fixed.push_back(arc);
    }
  for (const Column& col : pool_) {
    if (col.is_dummy || lp_.is_fixed(col.lp_id)) continue;
    bool ok = true;
    for (int a : col.path.arcs)
      if (!allowed.contains(a)) { ok = false; break; }
    if (!ok) {
      lp_.fix(col.lp_id, 0.0);
      fixed.push_back(col.lp_id);
    }
  }

  CgResult res;
  double best_lag = -kInf;
  while (true) {
    LpModel::SolveOptions so;
    so.deadline = deadline;
    LpSolution sol = lp_.solve(so);
    if (sol.status == LpStatus::IterationLimit) {
      res.status = CgStatus::DeadlineHit;
      break;
    }
    if (sol.status != LpStatus::Optimal)
      throw NumericalFailure("restricted master lost feasibility");

    res.lp_value = sol.objective;
    res.x_fractional.assign(sol.primal.begin(), sol.primal.begin() + m);

    if (deadline.expired()) {
      res.status = CgStatus::DeadlineHit;
      break;
    }

    int added = 0;
    bool all_certified = true;
    bool unfeasible = false;
    double negative_rc_sum = 0.0;
    for (int a = 0; a < k && !unfeasible; ++a) {
      Deadline sub = deadline.earlier_of(Deadline::in(t_atomic_));
      PriceOutcome out = price_full(a, sol, allowed, sub);
      if (out.atomic.unfeas) {
        unfeasible = true;
        break;
      }
      if (!out.atomic.path.empty()) {
        bool all_ok = true;
        for (int b = 0; b < k && all_ok; ++b)
          all_ok = check(*g_, algs_[b], out.atomic.path);
        if (all_ok) {
          double cost = g_->evaluate(out.atomic.path).cost;
          if (cost < res.feasible_cost) {
            res.feasible_cost = cost;
            res.feasible_path = out.atomic.path;
          }
        }
      }
      if (out.certified) {
        if (out.reduced_cost < 0.0) negative_rc_sum += out.reduced_cost;
      } else {
        all_certified = false;
      }
      if (out.column_index >= 0) added++;
    }

    if (unfeasible) {
      // A certificate that some algorithm admits no path on this arc set.
      res.status = CgStatus::RootInfeasible;
      break;
    }
    if (all_certified)
      best_lag = std::max(best_lag, res.lp_value + negative_rc_sum);
    if (added == 0) {
      if (all_certified) {
        res.converged = true;
        bool dummy_positive = false;
        for (int a = 0; a < k; ++a)
          if (sol.primal[dummy_ids_[a]] > 1e-6) dummy_positive = true;
        if (dummy_positive) {
          res.status = CgStatus::RootInfeasible;
        } else {
          res.status = CgStatus::Converged;
          best_lag = res.lp_value;
        }
      } else {
        res.status = CgStatus::DeadlineHit;  // heuristic stall or timeouts
      }
      break;
    }
  }

  res.lagrangian_bound =
      res.status == CgStatus::RootInfeasible ? kInf : best_lag;
  for (int id : fixed) lp_.unfix(id);
  return res;
}

double lagrangian_bound(double lp_value,
                        std::span<const double> min_reduced_costs) {
  double b = lp_value;
  for (double rc : min_reduced_costs) b += std::min(0.0, rc);
  return b;
}

Path strip_to_path(const Graph& g, std::span<const double> x) {
  Path p;
  int node = g.source();
  std::vector<uint8_t> seen(g.num_nodes(), 0);
  seen[node] = 1;
  while (node != g.target()) {
    int chosen = -1;
    for (int a : g.out_arcs(node))
      if (x[a] > 1.0 - 1e-6) { chosen = a; break; }
    if (chosen < 0) return Path{};  // support does not reach t
    int head = g.arc(chosen).head;
    if (seen[head]) return Path{};
    seen[head] = 1;
    p.arcs.push_back(chosen);
    node = head;
  }
  return p;
}

}  // namespace acg
