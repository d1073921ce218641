#pragma once

#include <string>
#include <utility>
#include <vector>

#include "stackevo/game.hpp"

namespace stackevo::seg {

/// Flat layout of a Defender plan code.
///
/// A plan holds one default path per unit plus, for every discovery event
/// (v, t) with t in [1, n-1], a joint continuation covering steps t+1..n.
/// Event keys are ordered by step then vertex. Default entries are absolute
/// vertex ids; continuation entries are indices into the sorted legal-move
/// list of the unit at its current position, so a continuation survives a
/// rewrite of the default prefix it hangs off (indices are read modulo the
/// move count; a plan whose stored indices all lie strictly inside their
/// current ranges is in canonical form).
struct SegLayout {
  int units = 0;     ///< number of Defender units (m)
  int steps = 0;     ///< game length (n)
  int vertices = 0;  ///< graph size (V)

  int default_offset(int unit) const { return unit * steps; }
  int default_length() const { return units * steps; }

  /// Number of discovery events a plan must cover: V * (n-1).
  int branch_count() const { return (steps - 1) * vertices; }
  int branch_key_step(int key) const { return 1 + key / vertices; }
  int branch_key_vertex(int key) const { return key % vertices; }
  /// Continuation length per unit for this key: steps t+1..n.
  int branch_length(int key) const { return steps - branch_key_step(key); }

  /// Flat offset of the continuation of `unit` under event `key`.
  int branch_offset(int key, int unit) const {
    const int t = branch_key_step(key);
    // Full blocks of earlier steps, then earlier vertices of the same step.
    const int before = (t - 1) * steps - t * (t - 1) / 2;
    return default_length() + units * (vertices * before + branch_key_vertex(key) * (steps - t)) +
           unit * (steps - t);
  }

  int total_length() const {
    return default_length() + units * vertices * (steps - 1) * steps / 2;
  }
};

/// Search game on a directed graph: several Defender units, each confined to
/// its own vertex subset, hunt an Attacker who leaves traces at visited
/// vertices (erased by staying put for a second step). When a unit steps onto
/// a fresh trace for the first time, all units switch to the continuation
/// stored for that discovery event.
class SearchGame final : public GameModel {
 public:
  struct Unit {
    int start = 0;
    std::vector<int> allowed;  // sorted vertex ids; must contain start
  };

  struct Data {
    int n = 1;
    std::vector<VertexPayoffs> payoffs;      // one per vertex, id = index
    std::vector<bool> target;                // one per vertex
    std::vector<std::pair<int, int>> edges;  // directed a -> b
    std::vector<Unit> units;
    int attacker_start = 0;
  };

  explicit SearchGame(Data data);

  const Data& data() const { return data_; }
  int vertex_count() const { return static_cast<int>(data_.payoffs.size()); }
  int unit_count() const { return static_cast<int>(data_.units.size()); }
  const SegLayout& layout() const { return layout_; }

  /// Moves of `unit` from `v`: {v} plus out-neighbors inside its allowed set,
  /// ascending. Empty when v is outside the unit's allowed set.
  const std::vector<int>& unit_moves(int unit, int v) const { return unit_moves_[unit][v]; }
  /// Attacker moves from `v`: {v} plus all out-neighbors, ascending.
  const std::vector<int>& attacker_moves(int v) const { return attacker_moves_[v]; }

  /// Default positions per unit and step (decoded from the plan), step index
  /// 0-based. Used by tests and by the replay tooling.
  std::vector<std::vector<int>> default_positions(const PureStrategy& plan) const;

  /// Resamples one stored list of the plan: selector 0 is the joint default,
  /// selector 1+k is the continuation of event key k. Steps before
  /// `start_step` (and other lists) are untouched.
  PureStrategy resample_list(const PureStrategy& plan, int selector, int start_step,
                             Rng& rng) const;

  std::string type_name() const override { return "seg"; }
  int steps() const override { return data_.n; }
  void validate_strategy(const PureStrategy& s, Role role) const override;
  PureStrategy random_pure_strategy(Role role, Rng& rng) const override;
  PureStrategy resample_suffix(const PureStrategy& s, Role role, int start_step,
                               Rng& rng) const override;
  double strategy_count(Role role) const override;

  static const std::vector<std::string>& preset_names();  // narrow, medium, wide

  /// Layered-corridor instance of the named preset with 2 units on disjoint
  /// patrol zones. Rewards drawn from [1,2], penalties fixed at -1.
  static SearchGame generate(const std::string& preset, int n, Rng& rng);

 protected:
  PayoffPair simulate_impl(const PureStrategy& defender,
                           const PureStrategy& attacker) const override;
  StrategySpace enumerate_strategies(Role role) const override;

 private:
  /// True when every continuation index lies strictly inside the move-count
  /// range induced by the plan's current default positions.
  bool indices_canonical(const std::vector<std::int32_t>& code) const;
  /// Chains of length `len` for `unit` starting at `v` (memoised per game).
  double continuation_count(int unit, int v, int len) const;

  Data data_;
  SegLayout layout_;
  std::vector<std::vector<std::vector<int>>> unit_moves_;  // [unit][vertex]
  std::vector<std::vector<int>> attacker_moves_;           // [vertex]
  std::vector<std::vector<std::vector<double>>> cont_count_;  // [unit][len][vertex]
  int max_move_count_ = 1;
};

}  // namespace stackevo::seg
