#pragma once

#include <utility>
#include <vector>

#include "stackevo/game.hpp"

namespace stackevo::whg {

/// Single-unit pursuit on an undirected graph. Both players move
/// simultaneously, one step per time unit; moving to a neighbor or staying.
/// A pure strategy is the list of vertices occupied at steps 1..n; the fixed
/// start vertices are step-0 positions and are not checked for events.
class WarehouseGame final : public GameModel {
 public:
  struct Data {
    int n = 1;
    std::vector<VertexPayoffs> payoffs;      // one per vertex, id = index
    std::vector<bool> target;                // one per vertex
    std::vector<std::pair<int, int>> edges;  // undirected, as listed in the file
    int defender_start = 0;
    int attacker_start = 0;
  };

  /// Validates all instance invariants (connectivity, distinct valid starts,
  /// non-empty targets with the required payoff signs).
  explicit WarehouseGame(Data data);

  const Data& data() const { return data_; }
  int vertex_count() const { return static_cast<int>(data_.payoffs.size()); }
  const std::vector<int>& targets() const { return target_list_; }

  /// Moves available from `v`: {stay} plus all neighbors, ascending.
  const std::vector<int>& moves_from(int v) const { return moves_[v]; }

  std::string type_name() const override { return "whg"; }
  int steps() const override { return data_.n; }
  void validate_strategy(const PureStrategy& s, Role role) const override;
  PureStrategy random_pure_strategy(Role role, Rng& rng) const override;
  PureStrategy resample_suffix(const PureStrategy& s, Role role, int start_step,
                               Rng& rng) const override;
  double strategy_count(Role role) const override;

  /// Grid-with-corridors generator: rooms on a grid, a random subset of walls
  /// opened, connectivity repaired, 1-3 targets placed far from the defender
  /// start. Rewards are drawn from [1,2], penalties fixed at -1.
  static WarehouseGame generate(int v_count, int n, Rng& rng);

 protected:
  PayoffPair simulate_impl(const PureStrategy& defender,
                           const PureStrategy& attacker) const override;
  StrategySpace enumerate_strategies(Role role) const override;

 private:
  int start_of(Role role) const {
    return role == Role::kDefender ? data_.defender_start : data_.attacker_start;
  }

  Data data_;
  std::vector<std::vector<int>> moves_;
  std::vector<int> target_list_;
};

}  // namespace stackevo::whg
