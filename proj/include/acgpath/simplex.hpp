#pragma once

#include <utility>
#include <vector>

#include "acgpath/deadline.hpp"
#include "acgpath/errors.hpp"

namespace acg {

enum class RowSense { LE, EQ, GE };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::IterationLimit;
  double objective = 0.0;
  std::vector<double> primal;  // per column
  std::vector<double> duals;   // per row; 0 for rows not active in the basis
  long iterations = 0;
};

// Revised primal simplex for minimization over nonnegative variables with
// LE/EQ/GE rows. Dense basis inverse with rank-1 updates, two phases with
// artificials, Dantzig pricing falling back to Bland's rule after
// 3*(rows+cols) iterations without objective progress.
//
// Columns may be added between solves (warm start stays valid: the new
// column enters nonbasic at zero). fix(col, v) clamps a variable to v; it
// invalidates the warm basis only when the column is basic or v differs from
// the current nonbasic value. unfix never invalidates.
//
// Rows with at most one structural nonzero whose implied constraint is
// already enforced by variable bounds are kept dormant: they are excluded
// from the basis and report dual 0, which is an optimal dual for them. A row
// activates permanently when a second nonzero appears. This keeps the dense
// basis proportional to the working problem instead of the declared one.
class LpModel {
 public:
  struct SolveOptions {
    long max_iterations = 0;  // 0 = automatic from model size
    Deadline deadline = Deadline::never();
  };

  int add_row(RowSense sense, double rhs);
  int add_column(double objective, std::vector<std::pair<int, double>> coeffs);

  void fix(int col, double value);
  void unfix(int col);
  bool is_fixed(int col) const;

  int row_count() const { return static_cast<int>(rows_.size()); }
  int column_count() const { return static_cast<int>(cols_.size()); }
  double objective_coefficient(int col) const;

  LpSolution solve();
  LpSolution solve(const SolveOptions& opts);

  // Tolerances shared with callers: feasibility/optimality are internal,
  // reporting is what result consumers should compare against.
  static constexpr double kFeasTol = 1e-9;
  static constexpr double kOptTol = 1e-9;
  static constexpr double kReportTol = 1e-6;

 private:
  struct Row {
    RowSense sense;
    double rhs;
    int nnz = 0;
    bool active = false;
    bool dropped = false;  // proven dependent during phase 1, excluded
  };
  struct Col {
    double obj;
    std::vector<std::pair<int, double>> coeffs;  // (row, value), row-sorted
    bool fixed = false;
    double fixed_value = 0.0;
  };

  // Basis member encoding: [0, ncols) structural, SLACK_BASE + row id for
  // slack/surplus, ART_BASE + row id for phase-1 artificials.
  static constexpr int kSlackBase = 1 << 28;
  static constexpr int kArtBase = 1 << 29;

  void activate_pending();
  bool try_extend_basis(int row);
  void cold_start();
  void refactor();
  void compute_beff();
  void compute_basic_values();
  double nonbasic_value(int col) const;
  void shift_nonbasic(int col, double delta);
  void member_column(int member, std::vector<double>& out) const;
  double member_cost(int member, bool phase1) const;
  int price_entering(const std::vector<double>& y, bool phase1, bool bland,
                     double* best_rc) const;
  LpStatus run_phase(bool phase1, long* iters, long max_iters,
                     const Deadline& deadline);
  bool drive_out_artificials();
  void drop_row(int active_idx);

  std::vector<Row> rows_;
  std::vector<Col> cols_;
  std::vector<std::vector<std::pair<int, double>>> row_cols_;  // row -> (col, value)
  std::vector<signed char> art_sign_;  // row -> artificial column sign
  std::vector<int> pending_activation_;

  // Warm solver state, meaningful only when basis_valid_.
  bool basis_valid_ = false;
  std::vector<int> active_rows_;   // active index -> row id
  std::vector<int> active_index_;  // row id -> active index or -1
  std::vector<int> basis_;         // active index -> member
  std::vector<int> basis_pos_;     // structural col -> active index or -1
  std::vector<double> binv_;       // m*m row-major basis inverse
  std::vector<double> beff_;       // rhs minus fixed nonbasic contributions
  std::vector<double> xb_;         // basic variable values
};

}  // namespace acg
