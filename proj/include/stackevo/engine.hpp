#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "stackevo/game.hpp"
#include "stackevo/response.hpp"
#include "stackevo/types.hpp"

namespace stackevo::easg {

/// Steering parameters. Defaults are the recommended values from tuning.
struct EasgParams {
  int p_size = 100;   ///< population size
  int n_g = 1000;     ///< hard generation limit
  int n_c = 20;       ///< generations without improvement before stopping
  double p_m = 0.5;   ///< per-individual mutation probability
  double p_c = 0.8;   ///< fraction of the population entering crossover
  double p_s = 0.9;   ///< tournament selection pressure
  int elite = 2;      ///< unconditionally promoted top individuals

  void validate() const;
};

struct GenerationStats {
  double best = 0.0;  ///< best fitness found so far (non-decreasing)
  double mean = 0.0;  ///< mean fitness of the evaluated pool
  double min = 0.0;   ///< minimum fitness of the evaluated pool
};

struct RunResult {
  Chromosome best;
  double best_fitness = 0.0;
  int generations_run = 0;
  std::vector<GenerationStats> history;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  bool interrupted = false;
};

/// p_size single-strategy chromosomes drawn via the game's uniform generator.
std::vector<Chromosome> init_population(const GameModel& game, const EasgParams& params,
                                        Rng& rng);

/// Merges both parents' strategies with halved probabilities, then deletes
/// each entry except the highest-probability one with probability (1-p)^2,
/// and renormalizes. Offspring support is a subset of the parents' union.
Chromosome crossover_pair(const Chromosome& a, const Chromosome& b, Rng& rng);

/// Selects round(p_c * p_size) distinct individuals, pairs them at random
/// (dropping one uniformly on an odd count) and produces one offspring per
/// pair. Parents stay in the population.
std::vector<Chromosome> crossover_phase(const std::vector<Chromosome>& population,
                                        const EasgParams& params, Rng& rng);

/// Re-draws one uniformly chosen entry's actions from a uniformly chosen
/// start step onward; probabilities are untouched (the result is coalesced in
/// case the resampled strategy now duplicates another entry).
Chromosome mutate(const Chromosome& c, const GameModel& game, Rng& rng);

/// Elitist tournament selection over the evaluated pool: top-e promoted
/// unconditionally, then binary tournaments (winner with probability p_s)
/// fill the next generation.
std::vector<Chromosome> selection(const std::vector<Chromosome>& pool,
                                  const std::vector<double>& fitness,
                                  const EasgParams& params, Rng& rng);

struct RunOptions {
  /// Polled between evaluations; returning true stops the run with the best
  /// solution found so far (anytime behavior).
  std::function<bool()> cancelled;
};

/// Full evolutionary loop. A fixed seed fully determines the result.
RunResult run(const GameModel& game, const EasgParams& params, std::uint64_t seed,
              const RunOptions& options = {});

}  // namespace stackevo::easg
