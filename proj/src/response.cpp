#include "stackevo/response.hpp"

#include <algorithm>
#include <limits>
#include <vector>

namespace stackevo {

namespace detail {

PayoffPair expected_payoffs_unchecked(const Chromosome& chromosome,
                                      const PureStrategy& attacker, const GameModel& game) {
  PayoffPair total;
  for (const auto& entry : chromosome.entries) {
    const PayoffPair p = game.simulate_prevalidated(entry.strategy, attacker);
    total.defender += entry.probability * p.defender;
    total.attacker += entry.probability * p.attacker;
  }
  return total;
}

BestResponseResult best_response_prevalidated(const Chromosome& chromosome,
                                              const GameModel& game) {
  const StrategySpace& space = game.strategies(Role::kAttacker);
  if (space.strategies.empty()) {
    throw GameError("best_response: attacker strategy space is empty");
  }
  std::vector<PayoffPair> payoffs;
  payoffs.reserve(space.size());
  double max_attacker = -std::numeric_limits<double>::infinity();
  for (const auto& a : space.strategies) {
    payoffs.push_back(expected_payoffs_unchecked(chromosome, a, game));
    max_attacker = std::max(max_attacker, payoffs.back().attacker);
  }
  // Among responses within the tie band of the maximum, the Attacker prefers
  // the Defender-favorable one; equal Defender utility keeps the earliest.
  std::size_t best = space.size();
  for (std::size_t j = 0; j < payoffs.size(); ++j) {
    if (payoffs[j].attacker < max_attacker - kTieTolerance) continue;
    if (best == space.size() || payoffs[j].defender > payoffs[best].defender) {
      best = j;
    }
  }
  return BestResponseResult{space.strategies[best], payoffs[best].attacker,
                            payoffs[best].defender, best};
}

}  // namespace detail

namespace {

void validate_for_game(const Chromosome& chromosome, const GameModel& game) {
  validate_chromosome_shape(chromosome);
  for (const auto& entry : chromosome.entries) {
    game.validate_strategy(entry.strategy, Role::kDefender);
  }
}

}  // namespace

PayoffPair expected_payoffs(const Chromosome& chromosome, const PureStrategy& attacker,
                            const GameModel& game) {
  validate_for_game(chromosome, game);
  game.validate_strategy(attacker, Role::kAttacker);
  return detail::expected_payoffs_unchecked(chromosome, attacker, game);
}

BestResponseResult best_response(const Chromosome& chromosome, const GameModel& game) {
  validate_for_game(chromosome, game);
  return detail::best_response_prevalidated(chromosome, game);
}

double evaluate_fitness(const Chromosome& chromosome, const GameModel& game) {
  return best_response(chromosome, game).defender_eu;
}

double FitnessCache::evaluate(const Chromosome& chromosome, const GameModel& game) {
  const std::string key = chromosome_key(chromosome);
  if (auto it = cache_.find(key); it != cache_.end()) {
    ++hits_;
    return it->second;
  }
  ++misses_;
  const double f = detail::best_response_prevalidated(chromosome, game).defender_eu;
  cache_.emplace(key, f);
  return f;
}

}  // namespace stackevo
