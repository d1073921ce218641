#include "stackevo/fig.hpp"

#include <algorithm>
#include <string>

#include "stackevo/format.hpp"

namespace stackevo::fig {

FlipItGame::FlipItGame(Data data) : data_(std::move(data)) {
  const int nv = vertex_count();
  if (nv < 1) throw ValidationError("fig: no vertices");
  if (data_.rounds < 1) throw ValidationError("fig: rounds must be >= 1");
  if (static_cast<int>(data_.cost.size()) != nv) {
    throw ValidationError("fig: cost count does not match vertex count");
  }
  for (int v = 0; v < nv; ++v) {
    if (!(data_.cost[v] >= 0.0) || !std::isfinite(data_.cost[v])) {
      throw ValidationError("fig: cost of vertex " + std::to_string(v) +
                            " must be finite and >= 0");
    }
    if (!(data_.reward[v] >= 0.0) || !std::isfinite(data_.reward[v])) {
      throw ValidationError("fig: reward of vertex " + std::to_string(v) +
                            " must be finite and >= 0");
    }
  }
  preds_.resize(nv);
  for (const auto& [a, b] : data_.edges) {
    if (a < 0 || a >= nv || b < 0 || b >= nv) {
      throw ValidationError("fig: edge endpoint out of range: [" + std::to_string(a) + "," +
                            std::to_string(b) + "]");
    }
    if (a == b) throw ValidationError("fig: self-loop at vertex " + std::to_string(a));
    preds_[b].push_back(a);
  }
  for (int v = 0; v < nv; ++v) {
    std::sort(preds_[v].begin(), preds_[v].end());
    preds_[v].erase(std::unique(preds_[v].begin(), preds_[v].end()), preds_[v].end());
  }
  if (data_.entries.empty()) throw ValidationError("fig: no entry nodes");
  if (!std::is_sorted(data_.entries.begin(), data_.entries.end()) ||
      std::adjacent_find(data_.entries.begin(), data_.entries.end()) != data_.entries.end()) {
    throw ValidationError("fig: entry nodes must be sorted and duplicate-free");
  }
  entry_flag_.assign(nv, 0);
  for (int e : data_.entries) {
    if (e < 0 || e >= nv) {
      throw ValidationError("fig: entry node " + std::to_string(e) + " out of range");
    }
    entry_flag_[e] = 1;
  }
}

PayoffPair FlipItGame::simulate_impl(const PureStrategy& defender,
                                     const PureStrategy& attacker) const {
  const int nv = vertex_count();
  // Owner per node: 0 = Defender, 1 = Attacker. All Defender's at the start.
  std::vector<char> own(nv, 0);
  double totals[2] = {0.0, 0.0};

  for (int round = 0; round < data_.rounds; ++round) {
    const int flip[2] = {defender.code[round], attacker.code[round]};
    // Both flips resolve against the ownership at the start of the round.
    const std::vector<char> snap = own;
    for (int p = 0; p < 2; ++p) {
      const int x = flip[p];
      totals[p] -= data_.cost[x];
      bool eligible = entry_flag_[x];
      for (std::size_t i = 0; !eligible && i < preds_[x].size(); ++i) {
        eligible = snap[preds_[x][i]] == p;
      }
      const bool owner_blocks = flip[snap[x]] == x;
      if (eligible && !owner_blocks) own[x] = static_cast<char>(p);
    }
    for (int v = 0; v < nv; ++v) totals[own[v]] += data_.reward[v];
  }
  return {totals[0], totals[1]};
}

void FlipItGame::validate_strategy(const PureStrategy& s, Role role) const {
  if (static_cast<int>(s.code.size()) != data_.rounds) {
    throw ValidationError(std::string("fig ") + role_name(role) + " sequence: expected " +
                          std::to_string(data_.rounds) + " rounds, got " +
                          std::to_string(s.code.size()));
  }
  for (int i = 0; i < data_.rounds; ++i) {
    const int x = s.code[i];
    if (x < 0 || x >= vertex_count()) {
      throw ValidationError(std::string("fig ") + role_name(role) + " sequence: round " +
                            std::to_string(i + 1) + ": vertex " + std::to_string(x) +
                            " out of range");
    }
  }
  if (role == Role::kAttacker && !entry_flag_[s.code[0]]) {
    throw ValidationError("fig attacker sequence: round 1: vertex " +
                          std::to_string(s.code[0]) + " is not an entry node");
  }
}

PureStrategy FlipItGame::random_pure_strategy(Role role, Rng& rng) const {
  PureStrategy s;
  s.code.resize(data_.rounds);
  for (int i = 0; i < data_.rounds; ++i) {
    if (i == 0 && role == Role::kAttacker) {
      s.code[i] = data_.entries[uniform_index(rng, data_.entries.size())];
    } else {
      s.code[i] = static_cast<std::int32_t>(uniform_index(rng, vertex_count()));
    }
  }
  return s;
}

PureStrategy FlipItGame::resample_suffix(const PureStrategy& s, Role role, int start_step,
                                         Rng& rng) const {
  validate_strategy(s, role);
  if (start_step < 1 || start_step > data_.rounds) {
    throw ValidationError("fig resample: step " + std::to_string(start_step) + " outside [1," +
                          std::to_string(data_.rounds) + "]");
  }
  PureStrategy out = s;
  for (int i = start_step - 1; i < data_.rounds; ++i) {
    if (i == 0 && role == Role::kAttacker) {
      out.code[i] = data_.entries[uniform_index(rng, data_.entries.size())];
    } else {
      out.code[i] = static_cast<std::int32_t>(uniform_index(rng, vertex_count()));
    }
  }
  return out;
}

double FlipItGame::strategy_count(Role role) const {
  double total = role == Role::kAttacker ? static_cast<double>(data_.entries.size()) : 1.0;
  const int free_rounds = data_.rounds - (role == Role::kAttacker ? 1 : 0);
  for (int i = 0; i < free_rounds; ++i) total *= vertex_count();
  return total;
}

StrategySpace FlipItGame::enumerate_strategies(Role role) const {
  const std::uint64_t cap = enumeration_cap();
  const double total = strategy_count(role);
  if (total > static_cast<double>(cap)) {
    throw CapacityError("fig: " + std::string(role_name(role)) + " strategy count " +
                        format_double(total, 3) + " exceeds cap " + std::to_string(cap));
  }
  StrategySpace space;
  space.role = role;
  space.strategies.reserve(static_cast<std::size_t>(total));
  std::vector<int> all(vertex_count());
  for (int v = 0; v < vertex_count(); ++v) all[v] = v;
  PureStrategy current;
  current.code.resize(data_.rounds);
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth == data_.rounds) {
      space.strategies.push_back(current);
      return;
    }
    const std::vector<int>& options =
        depth == 0 && role == Role::kAttacker ? data_.entries : all;
    for (int v : options) {
      current.code[depth] = v;
      self(self, depth + 1);
    }
  };
  dfs(dfs, 0);
  return space;
}

const std::vector<std::string>& FlipItGame::preset_names() {
  static const std::vector<std::string> names = {"chain", "tree", "diamond-mesh"};
  return names;
}

FlipItGame FlipItGame::generate(const std::string& preset, int rounds, Rng& rng) {
  if (rounds < 1) throw ValidationError("fig generate: need at least 1 round");
  Data d;
  d.rounds = rounds;
  int nv = 0;
  if (preset == "chain") {
    nv = 6;
    for (int i = 0; i + 1 < nv; ++i) d.edges.emplace_back(i, i + 1);
    d.entries = {0};
  } else if (preset == "tree") {
    // Complete binary tree rooted at the single entry.
    nv = 7;
    d.edges = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}};
    d.entries = {0};
  } else if (preset == "diamond-mesh") {
    // Two entries feeding three stacked diamond layers.
    nv = 8;
    d.edges = {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 4}, {3, 4},
               {2, 5}, {3, 5}, {4, 6}, {5, 6}, {4, 7}, {5, 7}};
    d.entries = {0, 1};
  } else {
    throw ValidationError("fig generate: unknown preset '" + preset + "'");
  }
  d.reward.resize(nv);
  d.cost.resize(nv);
  for (int v = 0; v < nv; ++v) {
    d.reward[v] = quantize9(uniform_real(rng, 1.0, 2.0));
    d.cost[v] = quantize9(uniform_real(rng, 0.0, 1.0));
  }
  return FlipItGame(std::move(d));
}

double normalize_defender_payoff(double x, double lo, double hi) {
  if (!(lo < hi)) {
    throw ValidationError("fig normalize: degenerate payoff range [" + format_double(lo) + "," +
                          format_double(hi) + "]");
  }
  return 2.0 * (x - lo) / (hi - lo) - 1.0;
}

}  // namespace stackevo::fig
