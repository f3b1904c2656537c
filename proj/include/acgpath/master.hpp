#pragma once

#include <chrono>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "acgpath/atomic.hpp"
#include "acgpath/graph.hpp"
#include "acgpath/simplex.hpp"

namespace acg {

enum class CgStatus { Converged, DeadlineHit, RootInfeasible };

struct Column {
  int owner = -1;  // algorithm index; dummies carry their owner too
  Path path;       // empty for dummies
  int lp_id = -1;
  bool is_dummy = false;
};

struct CgResult {
  double lp_value = std::numeric_limits<double>::infinity();
  double lagrangian_bound = -std::numeric_limits<double>::infinity();
  Path feasible_path;  // cheapest path passing every algorithm's check
  double feasible_cost = std::numeric_limits<double>::infinity();
  std::vector<double> x_fractional;  // per arc, from the last optimal RMP
  bool converged = false;
  CgStatus status = CgStatus::DeadlineHit;
};

struct MasterStats {
  long cg_calls = 0;
  long pricing_calls = 0;
  long columns_added = 0;
  double min_gamma_dual = 0.0;  // most negative raw linking dual observed
};

struct PriceOutcome {
  AtomicResult atomic;
  double reduced_cost = 0.0;  // sum of gamma over the path minus beta
  bool certified = false;
  int column_index = -1;  // pool index when a column was added, else -1
};

// The consensus-path master: outdegree rows per node, one convexity row per
// algorithm, and a linking row per (algorithm, arc) in >= form. Dummies with
// big-M cost keep every restricted problem feasible.
class MasterModel {
 public:
  MasterModel(const Graph& g, std::vector<AtomicAlgorithm> algs,
              std::chrono::milliseconds t_atomic = std::chrono::milliseconds(60));

  CgResult cg_solve(const ArcSet& allowed, Deadline deadline);

  PriceOutcome price_full(int alg, const LpSolution& duals,
                          const ArcSet& allowed, Deadline deadline);
  std::optional<Column> price(int alg, const LpSolution& duals,
                              const ArcSet& allowed, Deadline deadline);

  LpModel& lp() { return lp_; }
  const Graph& graph() const { return *g_; }
  const std::vector<AtomicAlgorithm>& algorithms() const { return algs_; }
  const std::vector<Column>& pool() const { return pool_; }
  const MasterStats& stats() const { return stats_; }
  double big_m() const { return big_m_; }

  int x_col(int arc) const { return arc; }
  int outdeg_row(int node) const { return outdeg_base_ + node; }
  int conv_row(int alg) const { return conv_base_ + alg; }
  int link_row(int alg, int arc) const {
    return link_base_ + alg * g_->num_arcs() + arc;
  }
  int dummy_lp_id(int alg) const { return dummy_ids_[alg]; }

 private:
  const Graph* g_;
  std::vector<AtomicAlgorithm> algs_;
  std::chrono::milliseconds t_atomic_;
  LpModel lp_;
  std::vector<Column> pool_;
  std::vector<int> dummy_ids_;
  std::set<std::pair<int, std::vector<int>>> dedup_;
  double big_m_ = 0.0;
  int outdeg_base_ = 0;
  int conv_base_ = 0;
  int link_base_ = 0;
  MasterStats stats_;
};

double lagrangian_bound(double lp_value,
                        std::span<const double> min_reduced_costs);

// Integral-x reader: walk the x support from s, dropping circuit components
// disconnected from the path (possible only with zero-cost arcs).
Path strip_to_path(const Graph& g, std::span<const double> x);

}  // namespace acg
