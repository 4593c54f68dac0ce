#pragma once
// Exact linear programming over arbitrary-precision rationals: two-phase
// primal simplex with Bland's anti-cycling rule on a dense tableau. The
// programs solved here are tiny (a few dozen variables per rigid skeleton),
// so exactness and simplicity beat sparse sophistication.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <utility>
#include <vector>

#include "faceopt/core.hpp"

namespace faceopt {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

enum class LpStatus { Optimal, Infeasible, Unbounded };

// minimize cost . x  subject to the rows and x >= 0.
struct LpProblem {
  enum Rel { LessEq = -1, Eq = 0, GreaterEq = 1 };

  int num_vars = 0;
  std::vector<Rational> cost;
  std::vector<std::vector<std::pair<int, Rational>>> rows;
  std::vector<int> rels;
  std::vector<Rational> rhs;

  int add_var(const Rational& c = Rational(0)) {
    cost.push_back(c);
    return num_vars++;
  }

  void add_row(std::vector<std::pair<int, Rational>> terms, Rel rel, const Rational& b) {
    for (const auto& [j, v] : terms)
      if (j < 0 || j >= num_vars) fail(ErrorCode::InvalidParams, "constraint on unknown variable");
    rows.push_back(std::move(terms));
    rels.push_back(static_cast<int>(rel));
    rhs.push_back(b);
  }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  std::vector<Rational> x;
};

inline LpSolution solve_lp(const LpProblem& p) {
  const Rational zero(0), one(1);
  int n = p.num_vars;
  int m = static_cast<int>(p.rows.size());

  // Dense rows with nonnegative right-hand sides.
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n, zero));
  std::vector<Rational> b = p.rhs;
  std::vector<int> rel = p.rels;
  for (int i = 0; i < m; ++i) {
    for (const auto& [j, v] : p.rows[i]) a[i][j] += v;
    if (b[i] < zero) {
      for (Rational& v : a[i]) v = -v;
      b[i] = -b[i];
      rel[i] = -rel[i];
    }
  }

  // Columns: structural, slack/surplus, artificial. Rows whose natural basic
  // column is a +1 slack start basic on it; the rest get an artificial.
  int cols = n;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (rel[i] != 0) slack_col[i] = cols++;
  int art_start = cols;
  for (int i = 0; i < m; ++i)
    if (rel[i] != -1) art_col[i] = cols++;

  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, zero));
  std::vector<int> basis(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = a[i][j];
    if (slack_col[i] >= 0) t[i][slack_col[i]] = rel[i] == -1 ? one : -one;
    if (art_col[i] >= 0) {
      t[i][art_col[i]] = one;
      basis[i] = art_col[i];
    } else {
      basis[i] = slack_col[i];
    }
  }

  int live = m;  // rows 0..live-1 are active; redundant rows get dropped
  auto pivot = [&](int row, int col) {
    Rational pv = t[row][col];
    for (Rational& v : t[row]) v /= pv;
    b[row] /= pv;
    for (int i = 0; i < live; ++i) {
      if (i == row || t[i][col] == zero) continue;
      Rational f = t[i][col];
      for (int j = 0; j < cols; ++j) t[i][j] -= f * t[row][j];
      b[i] -= f * b[row];
    }
    basis[row] = col;
  };

  // Minimize cost over the tableau; only columns < allowed may enter. Bland's
  // rule (lowest eligible index in, lowest basic index out) prevents cycling.
  auto run = [&](const std::vector<Rational>& cost, int allowed) -> bool {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < allowed && enter < 0; ++j) {
        Rational d = cost[j];
        for (int i = 0; i < live; ++i)
          if (cost[basis[i]] != zero) d -= cost[basis[i]] * t[i][j];
        if (d < zero) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < live; ++i) {
        if (t[i][enter] <= zero) continue;
        Rational ratio = b[i] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  };

  LpSolution sol;
  if (art_start < cols) {
    std::vector<Rational> phase1(cols, zero);
    for (int j = art_start; j < cols; ++j) phase1[j] = one;
    if (!run(phase1, cols)) fail(ErrorCode::Internal, "phase-1 objective cannot be unbounded");
    Rational infeas = zero;
    for (int i = 0; i < live; ++i)
      if (basis[i] >= art_start) infeas += b[i];
    if (infeas > zero) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Pivot surviving artificials (all at value zero) out of the basis, or
    // drop their rows entirely when the row has become redundant.
    for (int i = 0; i < live;) {
      if (basis[i] < art_start) {
        ++i;
        continue;
      }
      int j = 0;
      while (j < art_start && t[i][j] == zero) ++j;
      if (j < art_start) {
        pivot(i, j);
        ++i;
      } else {
        t.erase(t.begin() + i);
        b.erase(b.begin() + i);
        basis.erase(basis.begin() + i);
        --live;
      }
    }
  }

  std::vector<Rational> phase2(cols, zero);
  for (int j = 0; j < n; ++j) phase2[j] = p.cost[j];
  if (!run(phase2, art_start)) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.x.assign(n, zero);
  for (int i = 0; i < live; ++i)
    if (basis[i] < n) sol.x[basis[i]] = b[i];
  for (int j = 0; j < n; ++j) sol.objective += p.cost[j] * sol.x[j];
  return sol;
}

}  // namespace faceopt
