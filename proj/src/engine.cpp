#include "stackevo/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace stackevo::easg {

void EasgParams::validate() const {
  if (p_size < 1) throw ValidationError("params: p_size must be positive");
  if (n_g < 1) throw ValidationError("params: n_g must be positive");
  if (n_c < 1) throw ValidationError("params: n_c must be positive");
  if (p_m < 0.0 || p_m > 1.0) throw ValidationError("params: p_m outside [0,1]");
  if (p_c < 0.0 || p_c > 1.0) throw ValidationError("params: p_c outside [0,1]");
  if (p_s < 0.5 || p_s > 1.0) throw ValidationError("params: p_s outside [0.5,1]");
  if (elite < 0 || elite > p_size) throw ValidationError("params: elite outside [0,p_size]");
}

std::vector<Chromosome> init_population(const GameModel& game, const EasgParams& params,
                                        Rng& rng) {
  params.validate();
  std::vector<Chromosome> population;
  population.reserve(params.p_size);
  for (int i = 0; i < params.p_size; ++i) {
    population.push_back(pure_chromosome(game.random_pure_strategy(Role::kDefender, rng)));
  }
  return population;
}

Chromosome crossover_pair(const Chromosome& a, const Chromosome& b, Rng& rng) {
  Chromosome merged;
  merged.entries.reserve(a.entries.size() + b.entries.size());
  for (const auto& e : a.entries) merged.entries.push_back({e.strategy, e.probability * 0.5});
  for (const auto& e : b.entries) merged.entries.push_back({e.strategy, e.probability * 0.5});
  merged = coalesce_and_normalize(merged);

  // The single highest-probability entry survives unconditionally; ties keep
  // the first in entry order.
  std::size_t keep = 0;
  for (std::size_t i = 1; i < merged.entries.size(); ++i) {
    if (merged.entries[i].probability > merged.entries[keep].probability) keep = i;
  }
  Chromosome pruned;
  for (std::size_t i = 0; i < merged.entries.size(); ++i) {
    if (i != keep) {
      const double p = merged.entries[i].probability;
      if (uniform_real01(rng) < (1.0 - p) * (1.0 - p)) continue;  // removed
    }
    pruned.entries.push_back(merged.entries[i]);
  }
  return coalesce_and_normalize(pruned);
}

std::vector<Chromosome> crossover_phase(const std::vector<Chromosome>& population,
                                        const EasgParams& params, Rng& rng) {
  const auto k = static_cast<std::size_t>(
      std::llround(params.p_c * static_cast<double>(params.p_size)));
  std::vector<std::size_t> chosen = sample_distinct(rng, population.size(), k);
  if (chosen.size() % 2 == 1) {
    chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, chosen.size())));
  }
  std::vector<Chromosome> offspring;
  offspring.reserve(chosen.size() / 2);
  for (std::size_t i = 0; i + 1 < chosen.size(); i += 2) {
    offspring.push_back(crossover_pair(population[chosen[i]], population[chosen[i + 1]], rng));
  }
  return offspring;
}

Chromosome mutate(const Chromosome& c, const GameModel& game, Rng& rng) {
  Chromosome out = c;
  const std::size_t entry = uniform_index(rng, out.entries.size());
  const int start_step = 1 + static_cast<int>(uniform_index(rng, game.steps()));
  out.entries[entry].strategy =
      game.resample_suffix(out.entries[entry].strategy, Role::kDefender, start_step, rng);
  return coalesce_and_normalize(out);
}

std::vector<Chromosome> selection(const std::vector<Chromosome>& pool,
                                  const std::vector<double>& fitness,
                                  const EasgParams& params, Rng& rng) {
  if (pool.size() < 2) throw ValidationError("selection: pool must hold at least 2 individuals");
  if (pool.size() != fitness.size()) {
    throw ValidationError("selection: fitness not computed for every pool member");
  }
  if (pool.size() < static_cast<std::size_t>(params.p_size)) {
    throw ValidationError("selection: pool smaller than p_size");
  }

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return fitness[x] > fitness[y]; });

  std::vector<Chromosome> next;
  next.reserve(params.p_size);
  for (int i = 0; i < params.elite && i < static_cast<int>(order.size()); ++i) {
    next.push_back(pool[order[i]]);
  }
  while (next.size() < static_cast<std::size_t>(params.p_size)) {
    const std::size_t i = uniform_index(rng, pool.size());
    std::size_t j = uniform_index(rng, pool.size() - 1);
    if (j >= i) ++j;
    // Higher fitness wins the comparison; an exact tie goes to pool order.
    std::size_t winner = i;
    std::size_t loser = j;
    if (fitness[j] > fitness[i] || (fitness[j] == fitness[i] && j < i)) {
      winner = j;
      loser = i;
    }
    next.push_back(uniform_real01(rng) < params.p_s ? pool[winner] : pool[loser]);
  }
  return next;
}

RunResult run(const GameModel& game, const EasgParams& params, std::uint64_t seed,
              const RunOptions& options) {
  params.validate();
  const auto t0 = std::chrono::steady_clock::now();
  auto cancelled = [&] { return options.cancelled && options.cancelled(); };

  Rng rng(seed);
  FitnessCache cache;
  std::vector<Chromosome> population = init_population(game, params, rng);

  RunResult result;
  result.seed = seed;
  result.best_fitness = -std::numeric_limits<double>::infinity();
  int stall = 0;

  while (result.generations_run < params.n_g) {
    ++result.generations_run;

    std::vector<Chromosome> pool = population;
    {
      std::vector<Chromosome> offspring = crossover_phase(population, params, rng);
      std::move(offspring.begin(), offspring.end(), std::back_inserter(pool));
    }
    for (auto& individual : pool) {
      if (uniform_real01(rng) < params.p_m) {
        individual = mutate(individual, game, rng);
      }
    }

    const double previous_best = result.best_fitness;
    std::vector<double> fitness(pool.size());
    double sum = 0.0;
    double minimum = std::numeric_limits<double>::infinity();
    bool aborted = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      fitness[i] = cache.evaluate(pool[i], game);
      sum += fitness[i];
      minimum = std::min(minimum, fitness[i]);
      if (fitness[i] > result.best_fitness) {
        result.best_fitness = fitness[i];
        result.best = pool[i];
      }
      // Poll after the evaluation so an interrupted run always carries at
      // least one evaluated incumbent.
      if (i + 1 < pool.size() && cancelled()) {
        aborted = true;
        break;
      }
    }
    if (aborted) {
      --result.generations_run;  // incomplete generation is not counted
      result.interrupted = true;
      break;
    }

    result.history.push_back(
        {result.best_fitness, sum / static_cast<double>(pool.size()), minimum});
    if (result.best_fitness > previous_best + kImprovementTolerance) {
      stall = 0;
    } else {
      ++stall;
    }

    population = selection(pool, fitness, params, rng);
    if (stall >= params.n_c) break;
    if (cancelled()) {
      result.interrupted = true;
      break;
    }
  }

  result.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace stackevo::easg
