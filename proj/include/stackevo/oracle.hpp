#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "stackevo/game.hpp"
#include "stackevo/types.hpp"

namespace stackevo::oracle {

/// Dense payoff matrices over the full enumerated strategy spaces. Row i /
/// column j carry the simulate() outcome of the i-th Defender and j-th
/// Attacker pure strategy in enumeration order.
struct PayoffMatrices {
  StrategySpace defender_space;
  StrategySpace attacker_space;
  std::vector<std::vector<double>> defender;  // [row][col]
  std::vector<std::vector<double>> attacker;  // [row][col]

  std::size_t rows() const { return defender.size(); }
  std::size_t cols() const { return defender.empty() ? 0 : defender[0].size(); }
};

/// Enumerates both spaces and plays every profile once. Propagates the
/// capacity error when a space exceeds the enumeration cap.
PayoffMatrices build_matrices(const GameModel& game);

enum class SseStatus { kOptimal, kCapacityExceeded };

/// Exact Strong Stackelberg Equilibrium: the Defender's optimal commitment
/// assuming the Attacker best-responds and breaks ties in the Defender's
/// favor.
struct SseSolution {
  SseStatus status = SseStatus::kOptimal;
  double value = 0.0;             ///< Defender expected payoff at the SSE
  Chromosome defender_mixed;      ///< support-only, probabilities >= 1e-9
  PureStrategy attacker_response; ///< tie-broken best response
  std::size_t response_index = 0; ///< column of attacker_response
};

/// Multiple-LPs method: one linear program per Attacker column, maximizing
/// the Defender payoff subject to that column being a best response;
/// infeasible columns are skipped and value ties resolve to the lower column
/// index. The mixed strategy is cleaned (weights < 1e-9 dropped, the rest
/// renormalized) and the response re-derived from the cleaned mixture with
/// the Defender-favorable tie rule.
SseSolution solve_sse(const PayoffMatrices& m);

/// build_matrices + solve_sse; a capacity error is reported as a
/// kCapacityExceeded solution instead of propagating.
SseSolution solve_game(const GameModel& game);

/// Smallest and largest entries of the Defender matrix: the exact payoff
/// extrema over all strategy profiles, mixed ones included.
std::pair<double, double> defender_payoff_extrema(const PayoffMatrices& m);

}  // namespace stackevo::oracle
