#include "credal/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace credal {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;
constexpr double kFeasEps = 1e-9;

// Standard-form tableau: minimize c.z subject to A z = b, z >= 0, b >= 0.
// T has m+1 rows and n+1 columns; row m is the reduced-cost row and column n
// is the right-hand side.  basis[i] is the variable basic in row i.
struct Tableau {
  int m = 0, n = 0;
  std::vector<std::vector<double>> t;
  std::vector<int> basis;

  double& at(int i, int j) { return t[i][j]; }
  double at(int i, int j) const { return t[i][j]; }

  void pivot(int row, int col) {
    double piv = t[row][col];
    for (int j = 0; j <= n; ++j) t[row][j] /= piv;
    t[row][col] = 1.0;
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      double factor = t[i][col];
      if (factor == 0.0) continue;
      for (int j = 0; j <= n; ++j) t[i][j] -= factor * t[row][j];
      t[i][col] = 0.0;
    }
    basis[row] = col;
  }

  // Returns true when optimal, false when unbounded.
  bool run() {
    for (long long iter = 0;; ++iter) {
      if (iter > 200000LL + 64LL * (m + 1) * (n + 1))
        throw error("simplex: iteration limit exceeded");
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (t[m][j] < -kCostEps) {
          enter = j;  // Bland: lowest index
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t[i][enter] > kPivotEps) {
          double ratio = t[i][n] / t[i][enter];
          if (ratio < best - 1e-12 ||
              (ratio <= best + 1e-12 &&
               (leave < 0 || basis[i] < basis[leave]))) {
            if (ratio < best) best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  const int nv = lp.num_vars;
  if (static_cast<int>(lp.objective.size()) != nv)
    throw validation_error("solve_lp: objective size mismatch");
  for (const auto& r : lp.rows)
    if (static_cast<int>(r.coeffs.size()) != nv)
      throw validation_error("solve_lp: row size mismatch");
  if (!lp.nonneg.empty() && static_cast<int>(lp.nonneg.size()) != nv)
    throw validation_error("solve_lp: nonneg size mismatch");

  auto is_nonneg = [&](int j) { return lp.nonneg.empty() || lp.nonneg[j]; };

  // Column layout: for each original variable one column (nonnegative) or
  // two (free, split x = x+ - x-), then one slack per inequality row, then
  // artificials.
  std::vector<int> pos_col(nv), neg_col(nv, -1);
  int ncols = 0;
  for (int j = 0; j < nv; ++j) {
    pos_col[j] = ncols++;
    if (!is_nonneg(j)) neg_col[j] = ncols++;
  }
  const int m = static_cast<int>(lp.rows.size());
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (lp.rows[i].rel != Rel::EQ) slack_col[i] = ncols++;
  const int nstruct = ncols;

  // Build rows with nonnegative right-hand sides.
  std::vector<std::vector<double>> a(m, std::vector<double>(nstruct, 0.0));
  std::vector<double> b(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const auto& r = lp.rows[i];
    double sign = 1.0;
    Rel rel = r.rel;
    if (r.rhs < 0.0) {
      sign = -1.0;
      rel = (r.rel == Rel::LE) ? Rel::GE : (r.rel == Rel::GE ? Rel::LE : Rel::EQ);
    }
    for (int j = 0; j < nv; ++j) {
      a[i][pos_col[j]] = sign * r.coeffs[j];
      if (neg_col[j] >= 0) a[i][neg_col[j]] = -sign * r.coeffs[j];
    }
    b[i] = sign * r.rhs;
    if (slack_col[i] >= 0) a[i][slack_col[i]] = (rel == Rel::LE) ? 1.0 : -1.0;
  }

  // Basis: slack columns with +1 serve directly; otherwise artificials.
  std::vector<int> art_col(m, -1);
  int nall = nstruct;
  for (int i = 0; i < m; ++i) {
    bool slack_ok = slack_col[i] >= 0 && a[i][slack_col[i]] > 0.0;
    if (!slack_ok) art_col[i] = nall++;
  }

  Tableau tab;
  tab.m = m;
  tab.n = nall;
  tab.t.assign(m + 1, std::vector<double>(nall + 1, 0.0));
  tab.basis.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < nstruct; ++j) tab.at(i, j) = a[i][j];
    tab.at(i, nall) = b[i];
    if (art_col[i] >= 0) {
      tab.at(i, art_col[i]) = 1.0;
      tab.basis[i] = art_col[i];
    } else {
      tab.basis[i] = slack_col[i];
    }
  }

  // Phase 1: minimize the sum of artificials.  Price out basic artificials.
  bool have_art = false;
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0) have_art = true;
  if (have_art) {
    for (int j = 0; j <= nall; ++j) {
      double s = 0.0;
      for (int i = 0; i < m; ++i)
        if (art_col[i] >= 0) s += tab.at(i, j);
      tab.at(m, j) = -s;
    }
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) tab.at(m, art_col[i]) = 0.0;
    if (!tab.run()) throw error("simplex: phase 1 unbounded");
    double phase1 = -tab.at(m, nall);
    if (phase1 > kFeasEps) return {LpStatus::Infeasible, 0.0, {}};
    // Drive remaining artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (tab.basis[i] < nstruct) continue;
      int col = -1;
      for (int j = 0; j < nstruct; ++j) {
        if (std::fabs(tab.at(i, j)) > kPivotEps) {
          col = j;
          break;
        }
      }
      if (col >= 0) tab.pivot(i, col);
      // else: the row is redundant; its artificial stays basic at value ~0,
      // which is harmless because the column is never eligible again.
    }
    // Erase artificial columns from consideration.
    for (int i = 0; i <= m; ++i)
      for (int j = nstruct; j < nall; ++j) tab.at(i, j) = 0.0;
  }

  // Phase 2 objective row: reduced costs of the real objective.
  std::vector<double> cost(nall, 0.0);
  for (int j = 0; j < nv; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] >= 0) cost[neg_col[j]] = -lp.objective[j];
  }
  for (int j = 0; j <= nall; ++j) tab.at(m, j) = (j < nall) ? cost[j] : 0.0;
  for (int i = 0; i < m; ++i) {
    int bv = tab.basis[i];
    double cb = (bv < nall) ? cost[bv] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j <= nall; ++j) tab.at(m, j) -= cb * tab.at(i, j);
  }
  for (int j = nstruct; j < nall; ++j) tab.at(m, j) = 0.0;

  if (!tab.run()) return {LpStatus::Unbounded, 0.0, {}};

  std::vector<double> z(nall, 0.0);
  for (int i = 0; i < m; ++i)
    if (tab.basis[i] < nall) z[tab.basis[i]] = tab.at(i, nall);
  LpResult res;
  res.status = LpStatus::Optimal;
  res.x.resize(nv);
  for (int j = 0; j < nv; ++j) {
    res.x[j] = z[pos_col[j]];
    if (neg_col[j] >= 0) res.x[j] -= z[neg_col[j]];
  }
  double obj = 0.0;
  for (int j = 0; j < nv; ++j) obj += lp.objective[j] * res.x[j];
  res.objective = obj;
  return res;
}

RatioResult min_ratio(const FractionalProgram& fp) {
  const int nv = fp.num_vars;
  if (static_cast<int>(fp.numerator.size()) != nv ||
      static_cast<int>(fp.denominator.size()) != nv)
    throw validation_error("min_ratio: coefficient size mismatch");

  // Variables: y_0..y_{nv-1}, t.  All nonnegative.
  LinearProgram lp;
  lp.num_vars = nv + 1;
  lp.objective.assign(nv + 1, 0.0);
  for (int j = 0; j < nv; ++j) lp.objective[j] = fp.numerator[j];
  lp.objective[nv] = fp.num_const;

  for (const auto& r : fp.rows) {
    if (static_cast<int>(r.coeffs.size()) != nv)
      throw validation_error("min_ratio: row size mismatch");
    LinearConstraint h;
    h.coeffs.assign(nv + 1, 0.0);
    for (int j = 0; j < nv; ++j) h.coeffs[j] = r.coeffs[j];
    h.coeffs[nv] = -r.rhs;
    h.rel = r.rel;
    h.rhs = 0.0;
    lp.rows.push_back(std::move(h));
  }
  {
    LinearConstraint norm;
    norm.coeffs.assign(nv + 1, 0.0);
    for (int j = 0; j < nv; ++j) norm.coeffs[j] = fp.denominator[j];
    norm.coeffs[nv] = fp.den_const;
    norm.rel = Rel::EQ;
    norm.rhs = 1.0;
    lp.rows.push_back(std::move(norm));
  }

  LpResult r = solve_lp(lp);
  if (r.status == LpStatus::Infeasible)
    throw precondition_error("min_ratio: empty feasible set");
  if (r.status == LpStatus::Unbounded)
    throw precondition_error(
        "min_ratio: unbounded (denominator not positive on the polytope?)");
  double t = r.x[nv];
  if (t <= 1e-12)
    throw precondition_error(
        "min_ratio: degenerate optimum (denominator vanishes)");
  RatioResult out;
  out.value = r.objective;
  out.x.resize(nv);
  for (int j = 0; j < nv; ++j) out.x[j] = r.x[j] / t;
  return out;
}

}  // namespace credal
