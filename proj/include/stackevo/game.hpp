#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "stackevo/rng.hpp"
#include "stackevo/types.hpp"

namespace stackevo {

/// Per-vertex payoff quadruple shared by the pursuit games: what each player
/// receives when the game ends at this vertex, by interception
/// (defender_reward / attacker_penalty) or by an uncontested target visit
/// (defender_penalty / attacker_reward).
struct VertexPayoffs {
  double attacker_reward = 0.0;
  double attacker_penalty = 0.0;
  double defender_reward = 0.0;
  double defender_penalty = 0.0;
};

/// Abstract two-player finite-horizon game. Concrete games define the pure
/// strategy encoding, the simulator, the strategy enumeration (with its
/// deterministic ordering) and the random generation used by the engine.
///
/// Instances are immutable after construction and safe for concurrent reads;
/// the lazily built strategy spaces are guarded internally.
class GameModel {
 public:
  GameModel() = default;
  /// Moved-from instances are only destroyed; the strategy cache starts
  /// empty in the new object and is rebuilt on demand.
  GameModel(GameModel&&) noexcept {}
  GameModel(const GameModel&) = delete;
  GameModel& operator=(const GameModel&) = delete;
  GameModel& operator=(GameModel&&) = delete;
  virtual ~GameModel() = default;

  virtual std::string type_name() const = 0;

  /// Number of time steps (rounds) the game lasts.
  virtual int steps() const = 0;

  /// Plays one pure-strategy profile to completion. Validates both
  /// strategies first; invalid input raises ValidationError.
  PayoffPair simulate(const PureStrategy& defender, const PureStrategy& attacker) const {
    validate_strategy(defender, Role::kDefender);
    validate_strategy(attacker, Role::kAttacker);
    return simulate_impl(defender, attacker);
  }

  /// As simulate, for callers that guarantee validity (the evaluation loop
  /// re-plays the same strategies many times).
  PayoffPair simulate_prevalidated(const PureStrategy& defender,
                                   const PureStrategy& attacker) const {
    return simulate_impl(defender, attacker);
  }

  /// Throws ValidationError naming the offending step on an invalid strategy.
  virtual void validate_strategy(const PureStrategy& s, Role role) const = 0;

  /// Uniform action choice per step, per the role's movement rules.
  virtual PureStrategy random_pure_strategy(Role role, Rng& rng) const = 0;

  /// Re-draws actions uniformly from step `start_step` (1-based) through the
  /// final step, chaining through the resulting states. Steps before
  /// `start_step` are preserved exactly.
  virtual PureStrategy resample_suffix(const PureStrategy& s, Role role, int start_step,
                                       Rng& rng) const = 0;

  /// Exact number of pure strategies of the role, computed without
  /// enumeration (used for tree-size grouping in reports).
  virtual double strategy_count(Role role) const = 0;

  /// Full strategy space of the role, enumerated once and cached.
  /// Throws CapacityError when the count exceeds enumeration_cap().
  const StrategySpace& strategies(Role role) const;

 protected:
  virtual PayoffPair simulate_impl(const PureStrategy& defender,
                                   const PureStrategy& attacker) const = 0;
  virtual StrategySpace enumerate_strategies(Role role) const = 0;

 private:
  mutable std::mutex space_mutex_;
  mutable std::optional<StrategySpace> spaces_[2];
};

using GamePtr = std::shared_ptr<const GameModel>;

}  // namespace stackevo
