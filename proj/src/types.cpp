#include "stackevo/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <numeric>

namespace stackevo {

Chromosome coalesce_and_normalize(const Chromosome& c) {
  if (c.entries.empty()) {
    throw ValidationError("coalesce_and_normalize: chromosome has no entries");
  }
  Chromosome out;
  out.entries.reserve(c.entries.size());
  // Merge equal strategies into the first occurrence, keeping entry order.
  std::map<std::vector<std::int32_t>, std::size_t> seen;
  for (const auto& entry : c.entries) {
    if (entry.probability < 0.0) {
      throw ValidationError("coalesce_and_normalize: negative probability");
    }
    auto [it, inserted] = seen.try_emplace(entry.strategy.code, out.entries.size());
    if (inserted) {
      out.entries.push_back(entry);
    } else {
      out.entries[it->second].probability += entry.probability;
    }
  }
  out.entries.erase(std::remove_if(out.entries.begin(), out.entries.end(),
                                   [](const ChromosomeEntry& e) { return e.probability == 0.0; }),
                    out.entries.end());
  double total = 0.0;
  for (const auto& e : out.entries) total += e.probability;
  if (!(total > 0.0)) {
    throw ValidationError("coalesce_and_normalize: probabilities sum to zero");
  }
  for (auto& e : out.entries) e.probability /= total;
  return out;
}

void validate_chromosome_shape(const Chromosome& c) {
  if (c.entries.empty()) {
    throw ValidationError("chromosome: no entries");
  }
  double total = 0.0;
  for (const auto& e : c.entries) {
    if (!(e.probability > 0.0)) {
      throw ValidationError("chromosome: non-positive probability");
    }
    total += e.probability;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw ValidationError("chromosome: probabilities sum to " + std::to_string(total));
  }
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < c.entries.size(); ++j) {
      if (c.entries[i].strategy == c.entries[j].strategy) {
        throw ValidationError("chromosome: duplicate pure strategy at entries " +
                              std::to_string(i) + " and " + std::to_string(j));
      }
    }
  }
}

std::string chromosome_key(const Chromosome& c) {
  std::vector<std::size_t> order(c.entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return c.entries[a].strategy.code < c.entries[b].strategy.code;
  });
  std::string key;
  key.reserve(c.entries.size() * 24);
  for (std::size_t idx : order) {
    const auto& e = c.entries[idx];
    const auto len = static_cast<std::uint32_t>(e.strategy.code.size());
    key.append(reinterpret_cast<const char*>(&len), sizeof(len));
    key.append(reinterpret_cast<const char*>(e.strategy.code.data()),
               e.strategy.code.size() * sizeof(std::int32_t));
    key.append(reinterpret_cast<const char*>(&e.probability), sizeof(double));
  }
  return key;
}

Chromosome pure_chromosome(PureStrategy s) {
  Chromosome c;
  c.entries.push_back({std::move(s), 1.0});
  return c;
}

}  // namespace stackevo
