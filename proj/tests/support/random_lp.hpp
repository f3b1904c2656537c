#pragma once

// Seeded LP fuzz cases shared by the simplex unit suite and the acceptance
// runner: the production LpModel and the reference tableau problem are built
// from the same draws.

#include <cstdint>
#include <utility>
#include <vector>

#include "acgpath/rng.hpp"
#include "acgpath/simplex.hpp"
#include "support/lp_reference.hpp"

namespace acg::testing {

struct LpPair {
  LpModel lp;
  lpref::Problem ref;

  int add_row(RowSense s, double rhs, const std::vector<double>& dense) {
    int id = lp.add_row(s, rhs);
    lpref::Row r;
    r.a = dense;
    r.sense = s == RowSense::LE ? '<' : s == RowSense::GE ? '>' : '=';
    r.rhs = rhs;
    ref.rows.push_back(r);
    return id;
  }
};

inline LpPair random_lp(uint64_t seed) {
  Rng rng(seed);
  int n = rng.uniform_int(1, 9);
  int m = rng.uniform_int(1, 7);
  LpPair p;
  p.ref.c.resize(n);
  std::vector<std::vector<double>> dense(m, std::vector<double>(n, 0.0));
  std::vector<RowSense> sense(m);
  std::vector<double> rhs(m);
  for (int i = 0; i < m; ++i) {
    int k = rng.uniform_int(0, 2);
    sense[i] = k == 0 ? RowSense::LE : k == 1 ? RowSense::GE : RowSense::EQ;
    rhs[i] = rng.uniform_int(-6, 12);
    for (int j = 0; j < n; ++j)
      if (rng.uniform_real() < 0.6) dense[i][j] = rng.uniform_int(-4, 6);
  }
  for (int i = 0; i < m; ++i) p.add_row(sense[i], rhs[i], dense[i]);
  for (int j = 0; j < n; ++j) {
    double obj = rng.uniform_int(0, 10);
    p.ref.c[j] = obj;
    std::vector<std::pair<int, double>> coeffs;
    for (int i = 0; i < m; ++i)
      if (dense[i][j] != 0.0) coeffs.emplace_back(i, dense[i][j]);
    p.lp.add_column(obj, std::move(coeffs));
  }
  return p;
}

}  // namespace acg::testing
