#include "stackevo/game.hpp"

#include <cstdlib>

namespace stackevo {

std::uint64_t enumeration_cap() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("STACKEVO_CAP")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return kDefaultEnumerationCap;
  }();
  return cap;
}

const StrategySpace& GameModel::strategies(Role role) const {
  const int idx = role == Role::kDefender ? 0 : 1;
  std::lock_guard<std::mutex> lock(space_mutex_);
  if (!spaces_[idx].has_value()) {
    spaces_[idx] = enumerate_strategies(role);
  }
  return *spaces_[idx];
}

}  // namespace stackevo
