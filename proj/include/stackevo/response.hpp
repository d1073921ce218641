#pragma once

#include <optional>
#include <string>
#include <unordered_map>

#include "stackevo/game.hpp"
#include "stackevo/types.hpp"

namespace stackevo {

/// Expected payoffs of playing the mixture against one Attacker pure strategy:
/// the probability-weighted sum of simulate() outcomes, componentwise.
PayoffPair expected_payoffs(const Chromosome& chromosome, const PureStrategy& attacker,
                            const GameModel& game);

/// Scans every Attacker pure strategy and returns the one maximizing the
/// Attacker's expected utility. Ties within kTieTolerance are broken by larger
/// Defender utility, remaining ties by enumeration order (first wins).
BestResponseResult best_response(const Chromosome& chromosome, const GameModel& game);

/// Chromosome fitness: the Defender's payoff against the best Attacker response.
double evaluate_fitness(const Chromosome& chromosome, const GameModel& game);

/// Fitness memo keyed by the canonical chromosome encoding, so unchanged
/// individuals (elites in particular) are never re-evaluated.
class FitnessCache {
 public:
  double evaluate(const Chromosome& chromosome, const GameModel& game);

  std::size_t size() const { return cache_.size(); }
  std::uint64_t hits() const { return hits_; }
  std::uint64_t misses() const { return misses_; }

 private:
  std::unordered_map<std::string, double> cache_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

namespace detail {
/// Internal variant without per-call chromosome validation; callers must have
/// validated the chromosome against the game already.
PayoffPair expected_payoffs_unchecked(const Chromosome& chromosome,
                                      const PureStrategy& attacker, const GameModel& game);
BestResponseResult best_response_prevalidated(const Chromosome& chromosome,
                                              const GameModel& game);
}  // namespace detail

}  // namespace stackevo
