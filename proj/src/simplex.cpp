#include "acgpath/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace acg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDriveOutTol = 1e-7;
}  // namespace

int LpModel::add_row(RowSense sense, double rhs) {
  int id = static_cast<int>(rows_.size());
  Row r;
  r.sense = sense;
  r.rhs = rhs;
  // A row with no structural nonzeros is dormant while the zero activity
  // already satisfies it; otherwise it must take part in phase 1.
  bool satisfied_empty = (sense == RowSense::LE && rhs >= 0.0) ||
                         (sense == RowSense::GE && rhs <= 0.0) ||
                         (sense == RowSense::EQ && rhs == 0.0);
  r.active = !satisfied_empty;
  rows_.push_back(std::move(r));
  row_cols_.emplace_back();
  art_sign_.push_back(0);
  active_index_.push_back(-1);
  if (rows_.back().active) pending_activation_.push_back(id);
  return id;
}

int LpModel::add_column(double objective,
                        std::vector<std::pair<int, double>> coeffs) {
  int id = static_cast<int>(cols_.size());
  std::sort(coeffs.begin(), coeffs.end());
  for (auto& [r, v] : coeffs) {
    if (r < 0 || r >= row_count()) throw BadCoefficient("row out of range");
    if (v == 0.0) continue;
    row_cols_[r].emplace_back(id, v);
    Row& row = rows_[r];
    row.nnz++;
    if (row.dropped) {
      // A dropped row was linearly dependent over the columns known then;
      // a new coefficient can break that, so bring it back.
      row.dropped = false;
      pending_activation_.push_back(r);
    }
    if (!row.active) {
      // Keep dormant only if the single coefficient makes the row weaker
      // than the variable's own x >= 0 bound.
      bool implied = row.nnz == 1 &&
                     ((row.sense == RowSense::GE && v > 0.0 && row.rhs <= 0.0) ||
                      (row.sense == RowSense::LE && v < 0.0 && row.rhs >= 0.0));
      if (!implied) {
        row.active = true;
        pending_activation_.push_back(r);
      }
    }
  }
  Col c;
  c.obj = objective;
  c.coeffs = std::move(coeffs);
  cols_.push_back(std::move(c));
  basis_pos_.push_back(-1);
  return id;
}

double LpModel::objective_coefficient(int col) const {
  if (col < 0 || col >= column_count()) throw UnknownColumn("no such column");
  return cols_[col].obj;
}

bool LpModel::is_fixed(int col) const {
  if (col < 0 || col >= column_count()) throw UnknownColumn("no such column");
  return cols_[col].fixed;
}

double LpModel::nonbasic_value(int col) const {
  const Col& c = cols_[col];
  return c.fixed ? c.fixed_value : 0.0;
}

void LpModel::shift_nonbasic(int col, double delta) {
  if (delta == 0.0 || !basis_valid_) return;
  // beff absorbs the move; basic values follow x_B -= delta * B^-1 A_col.
  int m = static_cast<int>(active_rows_.size());
  std::vector<double> acol(m, 0.0);
  for (auto [r, v] : cols_[col].coeffs) {
    int idx = active_index_[r];
    if (idx >= 0) acol[idx] = v;
  }
  for (int i = 0; i < m; ++i) {
    double w = 0.0;
    const double* bi = &binv_[static_cast<size_t>(i) * m];
    for (int j = 0; j < m; ++j) w += bi[j] * acol[j];
    xb_[i] -= delta * w;
  }
  for (auto [r, v] : cols_[col].coeffs) {
    int idx = active_index_[r];
    if (idx >= 0) beff_[idx] -= delta * v;
  }
  for (int i = 0; i < m; ++i) {
    if (xb_[i] < -kFeasTol) {
      basis_valid_ = false;
      return;
    }
    if (xb_[i] < 0.0) xb_[i] = 0.0;
  }
}

void LpModel::fix(int col, double value) {
  if (col < 0 || col >= column_count()) throw UnknownColumn("no such column");
  if (value < 0.0) throw BadCoefficient("fixed value below variable bound");
  Col& c = cols_[col];
  if (c.fixed && c.fixed_value == value) return;
  if (basis_valid_ && basis_pos_[col] >= 0) basis_valid_ = false;
  double before = nonbasic_value(col);
  c.fixed = true;
  c.fixed_value = value;
  shift_nonbasic(col, value - before);
}

void LpModel::unfix(int col) {
  if (col < 0 || col >= column_count()) throw UnknownColumn("no such column");
  Col& c = cols_[col];
  if (!c.fixed) return;
  double before = c.fixed_value;
  c.fixed = false;
  c.fixed_value = 0.0;
  shift_nonbasic(col, 0.0 - before);
}

void LpModel::compute_beff() {
  int m = static_cast<int>(active_rows_.size());
  beff_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) beff_[i] = rows_[active_rows_[i]].rhs;
  for (int j = 0; j < column_count(); ++j) {
    const Col& c = cols_[j];
    if (!c.fixed || c.fixed_value == 0.0 || basis_pos_[j] >= 0) continue;
    for (auto [r, v] : c.coeffs) {
      int idx = active_index_[r];
      if (idx >= 0) beff_[idx] -= v * c.fixed_value;
    }
  }
}

void LpModel::compute_basic_values() {
  int m = static_cast<int>(active_rows_.size());
  xb_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    const double* bi = &binv_[static_cast<size_t>(i) * m];
    for (int j = 0; j < m; ++j) s += bi[j] * beff_[j];
    xb_[i] = s;
  }
}

void LpModel::member_column(int member, std::vector<double>& out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (member >= kArtBase) {
    int r = member - kArtBase;
    out[active_index_[r]] = art_sign_[r];
  } else if (member >= kSlackBase) {
    int r = member - kSlackBase;
    out[active_index_[r]] = rows_[r].sense == RowSense::LE ? 1.0 : -1.0;
  } else {
    for (auto [r, v] : cols_[member].coeffs) {
      int idx = active_index_[r];
      if (idx >= 0) out[idx] = v;
    }
  }
}

double LpModel::member_cost(int member, bool phase1) const {
  if (member >= kArtBase) return phase1 ? 1.0 : 0.0;
  if (member >= kSlackBase) return 0.0;
  return phase1 ? 0.0 : cols_[member].obj;
}

void LpModel::cold_start() {
  active_rows_.clear();
  std::fill(active_index_.begin(), active_index_.end(), -1);
  for (int r = 0; r < row_count(); ++r) {
    if (rows_[r].active && !rows_[r].dropped) {
      active_index_[r] = static_cast<int>(active_rows_.size());
      active_rows_.push_back(r);
    }
  }
  std::fill(basis_pos_.begin(), basis_pos_.end(), -1);
  int m = static_cast<int>(active_rows_.size());
  compute_beff();
  basis_.assign(m, -1);
  binv_.assign(static_cast<size_t>(m) * m, 0.0);
  xb_.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    int r = active_rows_[i];
    double res = beff_[i];
    double diag;
    if (rows_[r].sense == RowSense::LE && res >= 0.0) {
      basis_[i] = kSlackBase + r;
      diag = 1.0;
      xb_[i] = res;
    } else if (rows_[r].sense == RowSense::GE && res <= 0.0) {
      basis_[i] = kSlackBase + r;
      diag = -1.0;
      xb_[i] = -res;
    } else {
      art_sign_[r] = res >= 0.0 ? 1 : -1;
      basis_[i] = kArtBase + r;
      diag = art_sign_[r];
      xb_[i] = std::abs(res);
    }
    binv_[static_cast<size_t>(i) * m + i] = diag;  // diag(+-1) inverts itself
  }
  basis_valid_ = true;
}

bool LpModel::try_extend_basis(int row) {
  const Row& r = rows_[row];
  if (r.sense == RowSense::EQ) return false;
  int m = static_cast<int>(active_rows_.size());
  // Current activity of the row over every structural variable.
  double act = 0.0;
  for (auto [j, v] : row_cols_[row]) {
    int pos = basis_pos_[j];
    act += v * (pos >= 0 ? xb_[pos] : nonbasic_value(j));
  }
  double sigma = r.sense == RowSense::LE ? 1.0 : -1.0;
  double slack_val = sigma * (r.rhs - act);
  if (slack_val < -kFeasTol) return false;
  if (slack_val < 0.0) slack_val = 0.0;

  // B' = [[B, 0], [v^T, sigma]] with the new row's slack basic, so
  // B'^-1 = [[B^-1, 0], [-sigma * v^T B^-1, sigma]].
  std::vector<double> v(m, 0.0);
  for (int i = 0; i < m; ++i) {
    int member = basis_[i];
    if (member >= kSlackBase) continue;  // other rows' slacks are 0 here
    for (auto [j, coef] : row_cols_[row])
      if (j == member) v[i] = coef;
  }
  std::vector<double> w(m, 0.0);
  for (int i = 0; i < m; ++i) {
    if (v[i] == 0.0) continue;
    const double* bi = &binv_[static_cast<size_t>(i) * m];
    for (int j = 0; j < m; ++j) w[j] += v[i] * bi[j];
  }
  int nm = m + 1;
  std::vector<double> nb(static_cast<size_t>(nm) * nm, 0.0);
  for (int i = 0; i < m; ++i)
    std::copy_n(&binv_[static_cast<size_t>(i) * m], m,
                &nb[static_cast<size_t>(i) * nm]);
  for (int j = 0; j < m; ++j) nb[static_cast<size_t>(m) * nm + j] = -sigma * w[j];
  nb[static_cast<size_t>(m) * nm + m] = sigma;
  binv_ = std::move(nb);

  active_index_[row] = m;
  active_rows_.push_back(row);
  basis_.push_back(kSlackBase + row);
  xb_.push_back(slack_val);
  double fixed_contrib = 0.0;
  for (auto [j, coef] : row_cols_[row])
    if (cols_[j].fixed && basis_pos_[j] < 0)
      fixed_contrib += coef * cols_[j].fixed_value;
  beff_.push_back(r.rhs - fixed_contrib);
  return true;
}

void LpModel::activate_pending() {
  for (int r : pending_activation_) {
    if (!rows_[r].active || rows_[r].dropped) continue;
    if (active_index_[r] >= 0) continue;
    if (!basis_valid_) continue;  // cold_start collects it from the flag
    if (!try_extend_basis(r)) basis_valid_ = false;
  }
  pending_activation_.clear();
}

void LpModel::refactor() {
  int m = static_cast<int>(active_rows_.size());
  // Dense Gauss-Jordan inversion of the basis matrix.
  std::vector<double> a(static_cast<size_t>(m) * m, 0.0);
  std::vector<double> colbuf(m);
  for (int j = 0; j < m; ++j) {
    member_column(basis_[j], colbuf);
    for (int i = 0; i < m; ++i) a[static_cast<size_t>(i) * m + j] = colbuf[i];
  }
  std::vector<double> inv(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) inv[static_cast<size_t>(i) * m + i] = 1.0;
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    double best = kPivotTol;
    for (int i = c; i < m; ++i) {
      double v = std::abs(a[static_cast<size_t>(i) * m + c]);
      if (v > best) { best = v; piv = i; }
    }
    if (piv < 0) throw NumericalFailure("singular basis during refactor");
    if (piv != c) {
      for (int j = 0; j < m; ++j) {
        std::swap(a[static_cast<size_t>(piv) * m + j], a[static_cast<size_t>(c) * m + j]);
        std::swap(inv[static_cast<size_t>(piv) * m + j], inv[static_cast<size_t>(c) * m + j]);
      }
    }
    double d = a[static_cast<size_t>(c) * m + c];
    for (int j = 0; j < m; ++j) {
      a[static_cast<size_t>(c) * m + j] /= d;
      inv[static_cast<size_t>(c) * m + j] /= d;
    }
    for (int i = 0; i < m; ++i) {
      if (i == c) continue;
      double f = a[static_cast<size_t>(i) * m + c];
      if (f == 0.0) continue;
      for (int j = 0; j < m; ++j) {
        a[static_cast<size_t>(i) * m + j] -= f * a[static_cast<size_t>(c) * m + j];
        inv[static_cast<size_t>(i) * m + j] -= f * inv[static_cast<size_t>(c) * m + j];
      }
    }
  }
  binv_ = std::move(inv);
  compute_beff();
  compute_basic_values();
  for (double& v : xb_)
    if (v < 0.0 && v > -kFeasTol) v = 0.0;
}

void LpModel::drop_row(int active_idx) {
  int row = active_rows_[active_idx];
  rows_[row].dropped = true;
  active_rows_.erase(active_rows_.begin() + active_idx);
  basis_.erase(basis_.begin() + active_idx);
  std::fill(active_index_.begin(), active_index_.end(), -1);
  for (size_t i = 0; i < active_rows_.size(); ++i)
    active_index_[active_rows_[i]] = static_cast<int>(i);
  std::fill(basis_pos_.begin(), basis_pos_.end(), -1);
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] < kSlackBase) basis_pos_[basis_[i]] = static_cast<int>(i);
  refactor();
}

int LpModel::price_entering(const std::vector<double>& y, bool phase1,
                            bool bland, double* best_rc) const {
  int m = static_cast<int>(active_rows_.size());
  int chosen = -1;
  double best = -kOptTol;
  auto consider = [&](int member, double rc) {
    if (rc >= -kOptTol) return false;
    if (bland) { chosen = member; return true; }
    if (rc < best) { best = rc; chosen = member; }
    return false;
  };
  for (int j = 0; j < column_count(); ++j) {
    const Col& c = cols_[j];
    if (c.fixed || basis_pos_[j] >= 0) continue;
    double rc = phase1 ? 0.0 : c.obj;
    for (auto [r, v] : c.coeffs) {
      int idx = active_index_[r];
      if (idx >= 0) rc -= v * y[idx];
    }
    if (consider(j, rc)) { *best_rc = rc; return j; }
  }
  for (int i = 0; i < m; ++i) {
    int r = active_rows_[i];
    if (rows_[r].sense == RowSense::EQ) continue;
    int member = kSlackBase + r;
    bool basic = false;
    for (int k = 0; k < m; ++k)
      if (basis_[k] == member) { basic = true; break; }
    if (basic) continue;
    double sigma = rows_[r].sense == RowSense::LE ? 1.0 : -1.0;
    double rc = -sigma * y[i];
    if (consider(member, rc)) { *best_rc = rc; return member; }
  }
  *best_rc = chosen >= 0 ? best : 0.0;
  return chosen;
}

LpStatus LpModel::run_phase(bool phase1, long* iters, long max_iters,
                            const Deadline& deadline) {
  int m = static_cast<int>(active_rows_.size());
  if (m == 0) return LpStatus::Optimal;
  std::vector<double> y(m), d(m), acol(m);
  long stall = 0;
  const long bland_after = 3L * (row_count() + column_count());
  double zprev = kInf;
  while (true) {
    if (*iters >= max_iters) return LpStatus::IterationLimit;
    if ((*iters & 63) == 0 && deadline.expired()) return LpStatus::IterationLimit;

    // duals y = c_B B^-1
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int i = 0; i < m; ++i) {
        double cb = member_cost(basis_[i], phase1);
        if (cb != 0.0) s += cb * binv_[static_cast<size_t>(i) * m + j];
      }
      y[j] = s;
    }
    double rc = 0.0;
    bool bland = stall >= bland_after;
    int enter = price_entering(y, phase1, bland, &rc);
    if (enter < 0) return LpStatus::Optimal;

    member_column(enter, acol);
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      const double* bi = &binv_[static_cast<size_t>(i) * m];
      for (int j = 0; j < m; ++j) s += bi[j] * acol[j];
      d[i] = s;
    }
    int leave = -1;
    double theta = kInf;
    for (int i = 0; i < m; ++i) {
      if (d[i] <= kPivotTol) continue;
      double t = xb_[i] / d[i];
      if (t < theta - 1e-12 ||
          (t < theta + 1e-12 && (leave < 0 || basis_[i] < basis_[leave]))) {
        theta = t;
        leave = i;
      }
    }
    if (leave < 0) return LpStatus::Unbounded;
    if (theta < 0.0) theta = 0.0;

    // pivot: rank-1 update of B^-1 and basic values
    double piv = d[leave];
    double* bl = &binv_[static_cast<size_t>(leave) * m];
    for (int j = 0; j < m; ++j) bl[j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || d[i] == 0.0) continue;
      double f = d[i];
      double* bi = &binv_[static_cast<size_t>(i) * m];
      for (int j = 0; j < m; ++j) bi[j] -= f * bl[j];
      xb_[i] -= f * theta;
      if (xb_[i] < 0.0 && xb_[i] > -kFeasTol) xb_[i] = 0.0;
    }
    int out = basis_[leave];
    if (out < kSlackBase) basis_pos_[out] = -1;
    basis_[leave] = enter;
    if (enter < kSlackBase) basis_pos_[enter] = leave;
    xb_[leave] = theta;

    double z = 0.0;
    for (int i = 0; i < m; ++i) z += member_cost(basis_[i], phase1) * xb_[i];
    if (z < zprev - 1e-12) stall = 0; else stall++;
    zprev = z;
    (*iters)++;
  }
}

bool LpModel::drive_out_artificials() {
  int m = static_cast<int>(active_rows_.size());
  for (int l = 0; l < m; ++l) {
    if (basis_[l] < kArtBase) continue;
    // e_l^T B^-1 gives pivot values against every candidate column cheaply.
    const double* brow = &binv_[static_cast<size_t>(l) * m];
    int enter = -1;
    double piv = 0.0;
    for (int j = 0; j < column_count() && enter < 0; ++j) {
      if (cols_[j].fixed || basis_pos_[j] >= 0) continue;
      double p = 0.0;
      for (auto [r, v] : cols_[j].coeffs) {
        int idx = active_index_[r];
        if (idx >= 0) p += brow[idx] * v;
      }
      if (std::abs(p) > kDriveOutTol) { enter = j; piv = p; }
    }
    for (int i = 0; i < m && enter < 0; ++i) {
      int r = active_rows_[i];
      if (rows_[r].sense == RowSense::EQ) continue;
      int member = kSlackBase + r;
      bool basic = false;
      for (int k = 0; k < m; ++k)
        if (basis_[k] == member) { basic = true; break; }
      if (basic) continue;
      double sigma = rows_[r].sense == RowSense::LE ? 1.0 : -1.0;
      double p = brow[i] * sigma;
      if (std::abs(p) > kDriveOutTol) { enter = member; piv = p; }
    }
    if (enter < 0) {
      drop_row(l);
      return false;  // indices shifted; caller restarts the scan
    }
    std::vector<double> acol(m), d(m);
    member_column(enter, acol);
    for (int i = 0; i < m; ++i) {
      double s = 0.0;
      const double* bi = &binv_[static_cast<size_t>(i) * m];
      for (int j = 0; j < m; ++j) s += bi[j] * acol[j];
      d[i] = s;
    }
    double* bl = &binv_[static_cast<size_t>(l) * m];
    for (int j = 0; j < m; ++j) bl[j] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == l || d[i] == 0.0) continue;
      double f = d[i];
      double* bi = &binv_[static_cast<size_t>(i) * m];
      for (int j = 0; j < m; ++j) bi[j] -= f * bl[j];
    }
    basis_[l] = enter;
    if (enter < kSlackBase) basis_pos_[enter] = l;
    // The artificial sat at ~0, so basic values are unchanged up to noise.
    xb_[l] = std::max(0.0, xb_[l] / piv);
  }
  return true;
}

LpSolution LpModel::solve() { return solve(SolveOptions()); }

LpSolution LpModel::solve(const SolveOptions& opts) {
  activate_pending();
  if (!basis_valid_) cold_start();

  int m = static_cast<int>(active_rows_.size());
  long max_iters = opts.max_iterations > 0
                       ? opts.max_iterations
                       : 5000L + 500L * (m + column_count());
  bool user_cap = opts.max_iterations > 0;
  long iters = 0;

  LpSolution out;
  auto fail = [&](LpStatus st, double obj) {
    basis_valid_ = false;
    out.status = st;
    out.objective = obj;
    out.primal.assign(column_count(), 0.0);
    out.duals.assign(row_count(), 0.0);
    out.iterations = iters;
    return out;
  };

  for (int attempt = 0;; ++attempt) {
    bool have_art = false;
    for (int member : basis_)
      if (member >= kArtBase) { have_art = true; break; }
    if (have_art) {
      LpStatus st = run_phase(true, &iters, max_iters, opts.deadline);
      if (st == LpStatus::IterationLimit) {
        if (!user_cap && !opts.deadline.expired())
          throw NumericalFailure("phase 1 exceeded the iteration safety cap");
        return fail(LpStatus::IterationLimit, 0.0);
      }
      if (st == LpStatus::Unbounded)
        throw NumericalFailure("phase 1 unbounded");
      double art_sum = 0.0;
      for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i] >= kArtBase) art_sum += xb_[i];
      if (art_sum > 1e-7) return fail(LpStatus::Infeasible, kInf);
      while (!drive_out_artificials()) {}
      m = static_cast<int>(active_rows_.size());
    }

    LpStatus st = run_phase(false, &iters, max_iters, opts.deadline);
    if (st == LpStatus::Unbounded) return fail(LpStatus::Unbounded, -kInf);
    if (st == LpStatus::IterationLimit) {
      if (!user_cap && !opts.deadline.expired())
        throw NumericalFailure("phase 2 exceeded the iteration safety cap");
      // The basis is primal feasible, just unproven; report it.
      basis_valid_ = false;
    }

    // Residual audit guards rank-1 drift; one refactor retry.
    out.primal.assign(column_count(), 0.0);
    for (int j = 0; j < column_count(); ++j)
      out.primal[j] = basis_pos_[j] >= 0 ? xb_[basis_pos_[j]] : nonbasic_value(j);
    bool clean = true;
    if (st == LpStatus::Optimal) {
      for (int i = 0; i < m && clean; ++i) {
        int r = active_rows_[i];
        double act = 0.0;
        for (auto [j, v] : row_cols_[r]) act += v * out.primal[j];
        double resid;
        if (rows_[r].sense == RowSense::LE) resid = act - rows_[r].rhs;
        else if (rows_[r].sense == RowSense::GE) resid = rows_[r].rhs - act;
        else resid = std::abs(act - rows_[r].rhs);
        if (resid > 1e-7 * (1.0 + std::abs(rows_[r].rhs))) clean = false;
      }
    }
    if (!clean) {
      if (attempt >= 1) throw NumericalFailure("primal residuals persist after refactor");
      refactor();
      continue;
    }

    out.status = st;
    out.iterations = iters;
    double obj = 0.0;
    for (int j = 0; j < column_count(); ++j) obj += cols_[j].obj * out.primal[j];
    out.objective = obj;
    out.duals.assign(row_count(), 0.0);
    if (m > 0) {
      std::vector<double> y(m, 0.0);
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int i = 0; i < m; ++i) {
          double cb = member_cost(basis_[i], false);
          if (cb != 0.0) s += cb * binv_[static_cast<size_t>(i) * m + j];
        }
        y[j] = s;
      }
      for (int i = 0; i < m; ++i) out.duals[active_rows_[i]] = y[i];
    }
    if (st == LpStatus::Optimal) basis_valid_ = true;
    return out;
  }
}

}  // namespace acg
