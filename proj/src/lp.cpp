#include "stackevo/lp.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "stackevo/common.hpp"

namespace stackevo::lp {

namespace {

constexpr double kPivTol = 1e-9;

/// Simplex tableau: constraint rows (rhs in the last slot) plus the reduced
/// cost row z. Optimality for maximization is z >= 0 everywhere. Pivoting is
/// Dantzig's rule (most negative reduced cost, lowest index on ties) with an
/// exact ratio test; every step is deterministic.
struct Tableau {
  std::vector<std::vector<double>> rows;
  std::vector<double> z;
  std::vector<int> basis;
  int cols = 0;  // column count excluding the rhs slot

  void pivot(int r, int c) {
    std::vector<double>& pr = rows[r];
    const double pv = pr[c];
    for (double& v : pr) v /= pv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r) continue;
      const double f = rows[i][c];
      if (f == 0.0) continue;
      for (int j = 0; j <= cols; ++j) rows[i][j] -= f * pr[j];
      rows[i][c] = 0.0;
    }
    const double zf = z[c];
    if (zf != 0.0) {
      for (int j = 0; j <= cols; ++j) z[j] -= zf * pr[j];
      z[c] = 0.0;
    }
    basis[r] = c;
  }

  /// Rebuilds the reduced-cost row for the cost vector c (zero-extended).
  void price_out(const std::vector<double>& c) {
    z.assign(cols + 1, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) z[j] = -c[j];
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const double cb = basis[r] < static_cast<int>(c.size()) ? c[basis[r]] : 0.0;
      if (cb == 0.0) continue;
      for (int j = 0; j <= cols; ++j) z[j] += cb * rows[r][j];
    }
  }

  void optimize() {
    const int max_iter = 10000 + 200 * (static_cast<int>(rows.size()) + cols);
    for (int iter = 0; iter < max_iter; ++iter) {
      int enter = -1;
      double most = -kTol;
      for (int j = 0; j < cols; ++j) {
        if (z[j] < most) {
          most = z[j];
          enter = j;
        }
      }
      if (enter < 0) return;
      // Ratio test: exact minimum, exact ties by lowest basic index. A
      // tolerance band here admits slightly-larger ratios whose pivots push
      // basic values negative, and the resulting creep stalls degenerate
      // problems indefinitely; exact comparisons keep the iterate feasible.
      int leave = -1;
      double best = 0.0;
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const double a = rows[r][enter];
        if (a <= kPivTol) continue;
        const double ratio = rows[r][cols] / a;
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = static_cast<int>(r);
          best = ratio;
        }
      }
      if (leave < 0) throw GameError("lp: unbounded objective");
      pivot(leave, enter);
    }
    throw GameError("lp: iteration limit exceeded");
  }
};

}  // namespace

Result solve(const Problem& p) {
  const int n = static_cast<int>(p.objective.size());
  if (n == 0) throw GameError("lp: empty objective");
  if (p.ub_rows.size() != p.ub_rhs.size() || p.eq_rows.size() != p.eq_rhs.size()) {
    throw GameError("lp: constraint shape mismatch");
  }
  const int m1 = static_cast<int>(p.ub_rows.size());
  const int m2 = static_cast<int>(p.eq_rows.size());
  const int m = m1 + m2;

  Tableau t;
  t.rows.assign(m, {});
  t.basis.assign(m, -1);
  // Columns: n structural, m1 slacks, then one artificial per row that lacks
  // a usable identity column; rhs is kept in the final slot.
  std::vector<std::vector<double>> body(m, std::vector<double>(n + m1, 0.0));
  std::vector<double> rhs(m, 0.0);
  std::vector<char> needs_artificial(m, 0);
  for (int i = 0; i < m; ++i) {
    const std::vector<double>& src = i < m1 ? p.ub_rows[i] : p.eq_rows[i - m1];
    if (static_cast<int>(src.size()) != n) throw GameError("lp: constraint width mismatch");
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(src[j])) throw GameError("lp: non-finite coefficient");
      body[i][j] = src[j];
    }
    rhs[i] = i < m1 ? p.ub_rhs[i] : p.eq_rhs[i - m1];
    if (!std::isfinite(rhs[i])) throw GameError("lp: non-finite right-hand side");
    if (i < m1) body[i][n + i] = 1.0;
    if (rhs[i] < 0.0) {
      for (double& v : body[i]) v = -v;
      rhs[i] = -rhs[i];
      needs_artificial[i] = 1;  // the slack flipped to -1
    } else if (i >= m1) {
      needs_artificial[i] = 1;  // equality rows have no slack at all
    }
  }
  int n_art = 0;
  for (int i = 0; i < m; ++i) n_art += needs_artificial[i];
  t.cols = n + m1 + n_art;
  int next_art = n + m1;
  for (int i = 0; i < m; ++i) {
    t.rows[i].assign(t.cols + 1, 0.0);
    for (int j = 0; j < n + m1; ++j) t.rows[i][j] = body[i][j];
    t.rows[i][t.cols] = rhs[i];
    if (needs_artificial[i]) {
      t.rows[i][next_art] = 1.0;
      t.basis[i] = next_art++;
    } else {
      t.basis[i] = n + i;
    }
  }

  if (n_art > 0) {
    // Phase 1: drive the artificials to zero (maximize minus their sum).
    std::vector<double> c1(t.cols, 0.0);
    for (int j = n + m1; j < t.cols; ++j) c1[j] = -1.0;
    t.price_out(c1);
    t.optimize();
    double art_sum = 0.0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (t.basis[r] >= n + m1) art_sum += t.rows[r][t.cols];
    }
    if (art_sum > kTol) return Result{Status::kInfeasible, 0.0, {}};
    // Pivot leftover zero-valued artificials out of the basis; rows that
    // admit no pivot are redundant and dropped.
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (t.basis[r] < n + m1) continue;
      int c = -1;
      for (int j = 0; j < n + m1; ++j) {
        if (std::fabs(t.rows[r][j]) > kPivTol) {
          c = j;
          break;
        }
      }
      if (c >= 0) t.pivot(static_cast<int>(r), c);
    }
    for (std::size_t r = t.rows.size(); r-- > 0;) {
      if (t.basis[r] >= n + m1) {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
    for (std::vector<double>& row : t.rows) {
      row[n + m1] = row[t.cols];  // move the rhs next to the kept columns
      row.resize(n + m1 + 1);
    }
    t.cols = n + m1;
  }

  // Phase 2: the real objective over structural variables.
  std::vector<double> c2(t.cols, 0.0);
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(p.objective[j])) throw GameError("lp: non-finite objective");
    c2[j] = p.objective[j];
  }
  t.price_out(c2);
  t.optimize();

  Result out;
  out.status = Status::kOptimal;
  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    if (t.basis[r] < n) out.x[t.basis[r]] = t.rows[r][t.cols];
  }
  out.value = 0.0;
  for (int j = 0; j < n; ++j) out.value += p.objective[j] * out.x[j];
  return out;
}

}  // namespace stackevo::lp
