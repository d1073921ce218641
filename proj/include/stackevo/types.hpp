#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stackevo/common.hpp"

namespace stackevo {

/// A complete deterministic plan for one player. The content of `code` is
/// game-specific; two strategies are equal iff their codes are byte-identical.
struct PureStrategy {
  std::vector<std::int32_t> code;
  /// Set by the owning game: false when entries are stored in a reduced form
  /// that has drifted out of its canonical value range (see SEG branches).
  bool canonical = true;

  friend bool operator==(const PureStrategy& a, const PureStrategy& b) {
    return a.code == b.code;
  }
  friend bool operator!=(const PureStrategy& a, const PureStrategy& b) {
    return !(a == b);
  }
  friend bool operator<(const PureStrategy& a, const PureStrategy& b) {
    return a.code < b.code;
  }
};

struct PayoffPair {
  double defender = 0.0;
  double attacker = 0.0;

  friend bool operator==(const PayoffPair& a, const PayoffPair& b) {
    return a.defender == b.defender && a.attacker == b.attacker;
  }
};

struct ChromosomeEntry {
  PureStrategy strategy;
  double probability = 0.0;
};

/// A Defender mixed strategy: pure strategies with probabilities summing to 1.
/// Valid chromosomes hold no duplicate strategies and no zero-weight entries.
struct Chromosome {
  std::vector<ChromosomeEntry> entries;

  std::size_t length() const { return entries.size(); }
};

/// Finite ordered list of all pure strategies of one role. The enumeration
/// order is part of the owning game's contract.
struct StrategySpace {
  Role role = Role::kDefender;
  std::vector<PureStrategy> strategies;

  std::size_t size() const { return strategies.size(); }
};

/// The Attacker's tie-broken best pure response together with both players'
/// expected utilities against the Defender mixture it answers.
struct BestResponseResult {
  PureStrategy response;
  double attacker_eu = 0.0;
  double defender_eu = 0.0;
  /// Index of the response in the Attacker strategy space.
  std::size_t response_index = 0;
};

/// Merges duplicate strategies, drops zero-weight entries and rescales the
/// probabilities to sum to 1. First-occurrence order of entries is preserved.
/// Throws ValidationError on an empty, negative or all-zero weight vector.
Chromosome coalesce_and_normalize(const Chromosome& c);

/// Checks the Chromosome invariants that do not need a game: normalization,
/// strictly positive weights, no duplicate strategies.
void validate_chromosome_shape(const Chromosome& c);

/// Canonical byte key of a chromosome, invariant under entry permutation.
/// Used for fitness caching.
std::string chromosome_key(const Chromosome& c);

/// Single-entry chromosome helper.
Chromosome pure_chromosome(PureStrategy s);

}  // namespace stackevo
