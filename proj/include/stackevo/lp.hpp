#pragma once

#include <vector>

namespace stackevo::lp {

/// Feasibility and optimality tolerance of the solver.
inline constexpr double kTol = 1e-7;

enum class Status { kOptimal, kInfeasible };

/// Maximize objective . x subject to ub_rows . x <= ub_rhs,
/// eq_rows . x = eq_rhs and x >= 0. The feasible region is assumed bounded
/// (every use here intersects the probability simplex).
struct Problem {
  std::vector<double> objective;
  std::vector<std::vector<double>> ub_rows;
  std::vector<double> ub_rhs;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
};

struct Result {
  Status status = Status::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
};

/// Dense two-phase simplex with Bland's anti-cycling rule; fully
/// deterministic for identical inputs.
Result solve(const Problem& p);

}  // namespace stackevo::lp
