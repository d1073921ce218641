#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stackevo {

/// Raised when a strategy, chromosome or instance violates its contract.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an enumeration would exceed the configured strategy-count cap.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised for structural game-model problems (empty action sets, bad instances).
class GameError : public std::runtime_error {
 public:
  explicit GameError(const std::string& what) : std::runtime_error(what) {}
};

enum class Role { kDefender, kAttacker };

inline const char* role_name(Role r) {
  return r == Role::kDefender ? "defender" : "attacker";
}

/// Tolerance used when comparing attacker expected utilities for SSE ties.
inline constexpr double kTieTolerance = 1e-9;

/// Tolerance on chromosome probability normalization.
inline constexpr double kProbTolerance = 1e-9;

/// Minimum improvement of the best-found fitness that resets the stall counter.
inline constexpr double kImprovementTolerance = 1e-9;

/// Default cap on enumerated strategy-space sizes. STACKEVO_CAP overrides it.
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Active enumeration cap: STACKEVO_CAP from the environment, else the default.
std::uint64_t enumeration_cap();

}  // namespace stackevo
