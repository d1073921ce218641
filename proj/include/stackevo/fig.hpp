#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stackevo/game.hpp"

namespace stackevo::fig {

/// FlipIt game, No-Info variant: both players pick one node to flip each
/// round, blind to outcomes. A flip succeeds when the flipper controls a
/// predecessor of the node (or the node is an entry) and the node's
/// round-start owner is not flipping it in the same round. Every attempt
/// costs; each round adds the rewards of all currently owned nodes.
class FlipItGame final : public GameModel {
 public:
  struct Data {
    int rounds = 1;
    std::vector<std::pair<int, int>> edges;  // directed a -> b
    std::vector<int> entries;                // sorted entry-node ids
    std::vector<double> cost;                // per vertex, >= 0
    std::vector<double> reward;              // per vertex, >= 0
  };

  explicit FlipItGame(Data data);

  const Data& data() const { return data_; }
  int vertex_count() const { return static_cast<int>(data_.reward.size()); }
  bool is_entry(int v) const { return entry_flag_[v]; }
  const std::vector<int>& predecessors(int v) const { return preds_[v]; }

  std::string type_name() const override { return "fig"; }
  int steps() const override { return data_.rounds; }
  void validate_strategy(const PureStrategy& s, Role role) const override;
  PureStrategy random_pure_strategy(Role role, Rng& rng) const override;
  PureStrategy resample_suffix(const PureStrategy& s, Role role, int start_step,
                               Rng& rng) const override;
  double strategy_count(Role role) const override;

  static const std::vector<std::string>& preset_names();  // chain, tree, mesh

  /// DAG instance of the named preset: entry nodes have no incoming edges,
  /// rewards drawn from [1,2] and costs from [0,1].
  static FlipItGame generate(const std::string& preset, int rounds, Rng& rng);

 protected:
  PayoffPair simulate_impl(const PureStrategy& defender,
                           const PureStrategy& attacker) const override;
  StrategySpace enumerate_strategies(Role role) const override;

 private:
  Data data_;
  std::vector<std::vector<int>> preds_;  // [vertex] sorted predecessor ids
  std::vector<char> entry_flag_;
};

/// Affine map of a raw Defender payoff onto [-1, 1] given the exact payoff
/// extrema of the instance: lo maps to -1, hi to +1.
double normalize_defender_payoff(double x, double lo, double hi);

}  // namespace stackevo::fig
