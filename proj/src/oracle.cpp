#include "stackevo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include "stackevo/common.hpp"
#include "stackevo/lp.hpp"

namespace stackevo::oracle {

namespace {

constexpr double kWeightFloor = 1e-9;
constexpr double kTieTol = 1e-9;

/// Indices of the first occurrence of every distinct line (row or column) of
/// the defender/attacker matrix pair, in ascending order. Duplicate lines
/// carry identical payoffs for both players, so one representative suffices
/// for the LPs; tie-breaks over the full index range happen afterwards.
std::vector<std::size_t> distinct_rows(const PayoffMatrices& m) {
  std::map<std::pair<std::vector<double>, std::vector<double>>, std::size_t> seen;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto key = std::make_pair(m.defender[i], m.attacker[i]);
    if (seen.emplace(std::move(key), i).second) keep.push_back(i);
  }
  return keep;
}

std::vector<std::size_t> distinct_cols(const PayoffMatrices& m) {
  std::map<std::pair<std::vector<double>, std::vector<double>>, std::size_t> seen;
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::vector<double> d(m.rows()), a(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      d[i] = m.defender[i][j];
      a[i] = m.attacker[i][j];
    }
    auto key = std::make_pair(std::move(d), std::move(a));
    if (seen.emplace(std::move(key), j).second) keep.push_back(j);
  }
  return keep;
}

}  // namespace

PayoffMatrices build_matrices(const GameModel& game) {
  PayoffMatrices m;
  m.defender_space = game.strategies(Role::kDefender);
  m.attacker_space = game.strategies(Role::kAttacker);
  const std::size_t rows = m.defender_space.size();
  const std::size_t cols = m.attacker_space.size();
  m.defender.assign(rows, std::vector<double>(cols, 0.0));
  m.attacker.assign(rows, std::vector<double>(cols, 0.0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const PayoffPair p = game.simulate_prevalidated(m.defender_space.strategies[i],
                                                      m.attacker_space.strategies[j]);
      m.defender[i][j] = p.defender;
      m.attacker[i][j] = p.attacker;
    }
  }
  return m;
}

SseSolution solve_sse(const PayoffMatrices& m) {
  if (m.rows() == 0 || m.cols() == 0) throw GameError("sse: empty payoff matrices");
  if (m.attacker.size() != m.rows()) throw GameError("sse: matrix shape mismatch");

  const std::vector<std::size_t> rows = distinct_rows(m);
  const std::vector<std::size_t> cols = distinct_cols(m);
  const std::size_t nr = rows.size();

  // One LP per candidate response column j: maximize the Defender payoff
  // over mixtures x for which j is an Attacker best response.
  double best_value = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  bool any_feasible = false;
  for (std::size_t j : cols) {
    lp::Problem prob;
    prob.objective.resize(nr);
    for (std::size_t r = 0; r < nr; ++r) prob.objective[r] = m.defender[rows[r]][j];
    for (std::size_t k : cols) {
      if (k == j) continue;
      std::vector<double> row(nr);
      for (std::size_t r = 0; r < nr; ++r) {
        row[r] = m.attacker[rows[r]][k] - m.attacker[rows[r]][j];
      }
      prob.ub_rows.push_back(std::move(row));
      prob.ub_rhs.push_back(0.0);
    }
    prob.eq_rows.push_back(std::vector<double>(nr, 1.0));
    prob.eq_rhs.push_back(1.0);
    const lp::Result r = lp::solve(prob);
    if (r.status != lp::Status::kOptimal) continue;
    if (!any_feasible || r.value > best_value + kTieTol) {
      any_feasible = true;
      best_value = r.value;
      best_x = r.x;
    }
  }
  if (!any_feasible) throw GameError("sse: no feasible response column");

  // Drop numerical dust from the mixture and renormalize.
  double total = 0.0;
  for (double w : best_x) {
    if (w >= kWeightFloor) total += w;
  }
  if (total <= 0.0) throw GameError("sse: degenerate mixture");
  SseSolution out;
  std::vector<double> weight_by_row(m.rows(), 0.0);
  for (std::size_t r = 0; r < nr; ++r) {
    if (best_x[r] < kWeightFloor) continue;
    const double w = best_x[r] / total;
    weight_by_row[rows[r]] = w;
    out.defender_mixed.entries.push_back({m.defender_space.strategies[rows[r]], w});
  }

  // Re-derive the response from the cleaned mixture over every original
  // column: best Attacker expectation within tolerance, ties to the larger
  // Defender expectation, remaining ties to the lower index.
  std::vector<double> att_eu(m.cols(), 0.0), def_eu(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double w = weight_by_row[i];
    if (w == 0.0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      att_eu[j] += w * m.attacker[i][j];
      def_eu[j] += w * m.defender[i][j];
    }
  }
  const double max_att = *std::max_element(att_eu.begin(), att_eu.end());
  std::size_t pick = m.cols();
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (att_eu[j] < max_att - kTieTol) continue;
    if (pick == m.cols() || def_eu[j] > def_eu[pick] + kTieTol) pick = j;
  }
  out.status = SseStatus::kOptimal;
  out.value = def_eu[pick];
  out.attacker_response = m.attacker_space.strategies[pick];
  out.response_index = pick;
  return out;
}

SseSolution solve_game(const GameModel& game) {
  try {
    return solve_sse(build_matrices(game));
  } catch (const CapacityError&) {
    SseSolution out;
    out.status = SseStatus::kCapacityExceeded;
    return out;
  }
}

std::pair<double, double> defender_payoff_extrema(const PayoffMatrices& m) {
  if (m.rows() == 0 || m.cols() == 0) throw GameError("extrema: empty payoff matrices");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const std::vector<double>& row : m.defender) {
    for (double v : row) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

}  // namespace stackevo::oracle
