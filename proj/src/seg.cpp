#include "stackevo/seg.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "stackevo/format.hpp"

namespace stackevo::seg {

namespace {

/// Exact integer power by repeated multiplication; std::pow is not needed and
/// keeps bit-identical counts across libm versions.
double dpow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

SearchGame::SearchGame(Data data) : data_(std::move(data)) {
  const int v = vertex_count();
  if (v < 1) throw ValidationError("seg: no vertices");
  if (data_.n < 1) throw ValidationError("seg: n must be >= 1");
  if (static_cast<int>(data_.target.size()) != v) {
    throw ValidationError("seg: target flag count does not match vertex count");
  }
  std::vector<std::vector<int>> out(v);
  for (const auto& [a, b] : data_.edges) {
    if (a < 0 || a >= v || b < 0 || b >= v) {
      throw ValidationError("seg: edge endpoint out of range: [" + std::to_string(a) + "," +
                            std::to_string(b) + "]");
    }
    if (a == b) throw ValidationError("seg: self-loop at vertex " + std::to_string(a));
    out[a].push_back(b);
  }
  for (int i = 0; i < v; ++i) {
    std::sort(out[i].begin(), out[i].end());
    out[i].erase(std::unique(out[i].begin(), out[i].end()), out[i].end());
  }
  attacker_moves_.resize(v);
  for (int i = 0; i < v; ++i) {
    attacker_moves_[i] = out[i];
    attacker_moves_[i].insert(
        std::lower_bound(attacker_moves_[i].begin(), attacker_moves_[i].end(), i), i);
  }
  if (data_.attacker_start < 0 || data_.attacker_start >= v) {
    throw ValidationError("seg: attacker start out of range");
  }
  if (data_.target[data_.attacker_start]) {
    throw ValidationError("seg: attacker must not start on a target");
  }
  bool any_target = false;
  for (int i = 0; i < v; ++i) {
    if (!data_.target[i]) continue;
    any_target = true;
    if (!(data_.payoffs[i].attacker_reward > 0.0)) {
      throw ValidationError("seg: target " + std::to_string(i) +
                            " must have a positive attacker reward");
    }
    if (!(data_.payoffs[i].defender_penalty < 0.0)) {
      throw ValidationError("seg: target " + std::to_string(i) +
                            " must have a negative defender penalty");
    }
  }
  if (!any_target) throw ValidationError("seg: no target vertices");

  if (data_.units.empty()) throw ValidationError("seg: no defender units");
  const int m = unit_count();
  unit_moves_.assign(m, std::vector<std::vector<int>>(v));
  for (int u = 0; u < m; ++u) {
    const Unit& unit = data_.units[u];
    if (unit.allowed.empty()) {
      throw ValidationError("seg: unit " + std::to_string(u) + " has an empty allowed set");
    }
    for (int w : unit.allowed) {
      if (w < 0 || w >= v) {
        throw ValidationError("seg: unit " + std::to_string(u) + " allowed vertex " +
                              std::to_string(w) + " out of range");
      }
    }
    if (!std::is_sorted(unit.allowed.begin(), unit.allowed.end()) ||
        std::adjacent_find(unit.allowed.begin(), unit.allowed.end()) != unit.allowed.end()) {
      throw ValidationError("seg: unit " + std::to_string(u) +
                            " allowed set must be sorted and duplicate-free");
    }
    if (!std::binary_search(unit.allowed.begin(), unit.allowed.end(), unit.start)) {
      throw ValidationError("seg: unit " + std::to_string(u) + " starts at vertex " +
                            std::to_string(unit.start) + " outside its allowed set");
    }
    for (int w : unit.allowed) {
      std::vector<int>& mv = unit_moves_[u][w];
      mv.push_back(w);
      for (int nb : out[w]) {
        if (std::binary_search(unit.allowed.begin(), unit.allowed.end(), nb)) mv.push_back(nb);
      }
      std::sort(mv.begin(), mv.end());
      mv.erase(std::unique(mv.begin(), mv.end()), mv.end());
      max_move_count_ = std::max(max_move_count_, static_cast<int>(mv.size()));
    }
    // Every allowed vertex must be patrollable: reachable from the unit's
    // start through moves that stay inside the allowed set.
    std::vector<char> seen(v, 0);
    std::queue<int> q;
    seen[unit.start] = 1;
    q.push(unit.start);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      for (int w : unit_moves_[u][x]) {
        if (!seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
      }
    }
    for (int w : unit.allowed) {
      if (!seen[w]) {
        throw ValidationError("seg: unit " + std::to_string(u) + " cannot reach allowed vertex " +
                              std::to_string(w) + " from its start");
      }
    }
  }

  layout_ = SegLayout{m, data_.n, v};

  // Continuation chain counts per unit, start vertex and length.
  cont_count_.assign(m, std::vector<std::vector<double>>(data_.n, std::vector<double>(v, 0.0)));
  for (int u = 0; u < m; ++u) {
    for (int w : data_.units[u].allowed) cont_count_[u][0][w] = 1.0;
    for (int len = 1; len < data_.n; ++len) {
      for (int w : data_.units[u].allowed) {
        double total = 0.0;
        for (int nb : unit_moves_[u][w]) total += cont_count_[u][len - 1][nb];
        cont_count_[u][len][w] = total;
      }
    }
  }
}

double SearchGame::continuation_count(int unit, int v, int len) const {
  if (len == 0) return 1.0;
  return cont_count_[unit][len][v];
}

PayoffPair SearchGame::simulate_impl(const PureStrategy& defender,
                                     const PureStrategy& attacker) const {
  const SegLayout& L = layout_;
  const std::int32_t* plan = defender.code.data();
  std::vector<int> pos(L.units);
  for (int u = 0; u < L.units; ++u) pos[u] = data_.units[u].start;
  int apos = data_.attacker_start;
  std::vector<char> trace(L.vertices, 0);
  int branch_key = -1;
  int branch_t = 0;

  for (int step = 1; step <= L.steps; ++step) {
    for (int u = 0; u < L.units; ++u) {
      if (branch_key >= 0) {
        const int within = step - branch_t - 1;
        const std::int32_t raw = plan[L.branch_offset(branch_key, u) + within];
        const std::vector<int>& moves = unit_moves_[u][pos[u]];
        pos[u] = moves[raw % static_cast<int>(moves.size())];
      } else {
        pos[u] = plan[L.default_offset(u) + step - 1];
      }
    }
    const int prev = apos;
    apos = attacker.code[step - 1];
    // Arriving marks a vertex; staying a second step scrubs the mark.
    trace[apos] = apos != prev;
    for (int u = 0; u < L.units; ++u) {
      if (pos[u] == apos) {
        return {data_.payoffs[apos].defender_reward, data_.payoffs[apos].attacker_penalty};
      }
    }
    if (data_.target[apos]) {
      return {data_.payoffs[apos].defender_penalty, data_.payoffs[apos].attacker_reward};
    }
    if (branch_key < 0 && step < L.steps) {
      int found = -1;
      for (int u = 0; u < L.units; ++u) {
        if (trace[pos[u]] && (found < 0 || pos[u] < found)) found = pos[u];
      }
      if (found >= 0) {
        branch_key = (step - 1) * L.vertices + found;
        branch_t = step;
      }
    }
  }
  return {0.0, 0.0};
}

void SearchGame::validate_strategy(const PureStrategy& s, Role role) const {
  const SegLayout& L = layout_;
  if (role == Role::kAttacker) {
    if (static_cast<int>(s.code.size()) != data_.n) {
      throw ValidationError("seg attacker walk: expected " + std::to_string(data_.n) +
                            " steps, got " + std::to_string(s.code.size()));
    }
    int pos = data_.attacker_start;
    for (int i = 0; i < data_.n; ++i) {
      const int next = s.code[i];
      if (next < 0 || next >= vertex_count() ||
          !std::binary_search(attacker_moves_[pos].begin(), attacker_moves_[pos].end(), next)) {
        throw ValidationError("seg attacker walk: step " + std::to_string(i + 1) + ": vertex " +
                              std::to_string(next) + " is not reachable from vertex " +
                              std::to_string(pos));
      }
      pos = next;
    }
    return;
  }
  if (static_cast<int>(s.code.size()) != L.total_length()) {
    throw ValidationError("seg defender plan: expected " + std::to_string(L.total_length()) +
                          " entries, got " + std::to_string(s.code.size()));
  }
  for (int u = 0; u < L.units; ++u) {
    int pos = data_.units[u].start;
    for (int i = 0; i < data_.n; ++i) {
      const int next = s.code[L.default_offset(u) + i];
      if (next < 0 || next >= vertex_count() ||
          !std::binary_search(unit_moves_[u][pos].begin(), unit_moves_[u][pos].end(), next)) {
        throw ValidationError("seg defender plan: unit " + std::to_string(u) + " step " +
                              std::to_string(i + 1) + ": vertex " + std::to_string(next) +
                              " is not reachable from vertex " + std::to_string(pos));
      }
      pos = next;
    }
  }
  for (int i = L.default_length(); i < L.total_length(); ++i) {
    const std::int32_t raw = s.code[i];
    if (raw < 0 || raw >= max_move_count_) {
      throw ValidationError("seg defender plan: continuation entry " + std::to_string(raw) +
                            " at position " + std::to_string(i) + " outside [0," +
                            std::to_string(max_move_count_) + ")");
    }
  }
}

bool SearchGame::indices_canonical(const std::vector<std::int32_t>& code) const {
  const SegLayout& L = layout_;
  for (int k = 0; k < L.branch_count(); ++k) {
    const int t = L.branch_key_step(k);
    for (int u = 0; u < L.units; ++u) {
      int pos = code[L.default_offset(u) + t - 1];
      for (int j = 0; j < L.branch_length(k); ++j) {
        const std::int32_t raw = code[L.branch_offset(k, u) + j];
        const std::vector<int>& moves = unit_moves_[u][pos];
        if (raw >= static_cast<std::int32_t>(moves.size())) return false;
        pos = moves[raw];
      }
    }
  }
  return true;
}

std::vector<std::vector<int>> SearchGame::default_positions(const PureStrategy& plan) const {
  validate_strategy(plan, Role::kDefender);
  std::vector<std::vector<int>> pos(layout_.units, std::vector<int>(layout_.steps));
  for (int u = 0; u < layout_.units; ++u) {
    for (int i = 0; i < layout_.steps; ++i) {
      pos[u][i] = plan.code[layout_.default_offset(u) + i];
    }
  }
  return pos;
}

PureStrategy SearchGame::random_pure_strategy(Role role, Rng& rng) const {
  PureStrategy s;
  if (role == Role::kAttacker) {
    s.code.resize(data_.n);
    int pos = data_.attacker_start;
    for (int i = 0; i < data_.n; ++i) {
      const std::vector<int>& moves = attacker_moves_[pos];
      pos = moves[uniform_index(rng, moves.size())];
      s.code[i] = pos;
    }
    return s;
  }
  const SegLayout& L = layout_;
  s.code.resize(L.total_length());
  // Defaults first (unit by unit), then each event continuation in key
  // order: one fixed draw order so seeds replay exactly.
  for (int u = 0; u < L.units; ++u) {
    int pos = data_.units[u].start;
    for (int i = 0; i < data_.n; ++i) {
      const std::vector<int>& moves = unit_moves_[u][pos];
      pos = moves[uniform_index(rng, moves.size())];
      s.code[L.default_offset(u) + i] = pos;
    }
  }
  for (int k = 0; k < L.branch_count(); ++k) {
    const int t = L.branch_key_step(k);
    for (int u = 0; u < L.units; ++u) {
      int pos = s.code[L.default_offset(u) + t - 1];
      for (int j = 0; j < L.branch_length(k); ++j) {
        const std::vector<int>& moves = unit_moves_[u][pos];
        const std::size_t idx = uniform_index(rng, moves.size());
        s.code[L.branch_offset(k, u) + j] = static_cast<std::int32_t>(idx);
        pos = moves[idx];
      }
    }
  }
  return s;
}

PureStrategy SearchGame::resample_list(const PureStrategy& plan, int selector, int start_step,
                                       Rng& rng) const {
  validate_strategy(plan, Role::kDefender);
  const SegLayout& L = layout_;
  if (selector < 0 || selector > L.branch_count()) {
    throw ValidationError("seg resample: selector " + std::to_string(selector) + " outside [0," +
                          std::to_string(L.branch_count()) + "]");
  }
  if (start_step < 1 || start_step > data_.n) {
    throw ValidationError("seg resample: step " + std::to_string(start_step) + " outside [1," +
                          std::to_string(data_.n) + "]");
  }
  PureStrategy out = plan;
  if (selector == 0) {
    for (int u = 0; u < L.units; ++u) {
      int pos = start_step == 1 ? data_.units[u].start
                                : out.code[L.default_offset(u) + start_step - 2];
      for (int i = start_step - 1; i < data_.n; ++i) {
        const std::vector<int>& moves = unit_moves_[u][pos];
        pos = moves[uniform_index(rng, moves.size())];
        out.code[L.default_offset(u) + i] = pos;
      }
    }
  } else {
    const int k = selector - 1;
    const int t = L.branch_key_step(k);
    const int from = std::max(start_step, t + 1);
    for (int u = 0; u < L.units; ++u) {
      int pos = out.code[L.default_offset(u) + t - 1];
      for (int step = t + 1; step <= data_.n; ++step) {
        const std::vector<int>& moves = unit_moves_[u][pos];
        const int at = L.branch_offset(k, u) + (step - t - 1);
        if (step < from) {
          pos = moves[out.code[at] % static_cast<int>(moves.size())];
        } else {
          const std::size_t idx = uniform_index(rng, moves.size());
          out.code[at] = static_cast<std::int32_t>(idx);
          pos = moves[idx];
        }
      }
    }
  }
  out.canonical = indices_canonical(out.code);
  return out;
}

PureStrategy SearchGame::resample_suffix(const PureStrategy& s, Role role, int start_step,
                                         Rng& rng) const {
  if (role == Role::kAttacker) {
    validate_strategy(s, role);
    if (start_step < 1 || start_step > data_.n) {
      throw ValidationError("seg resample: step " + std::to_string(start_step) + " outside [1," +
                            std::to_string(data_.n) + "]");
    }
    PureStrategy out = s;
    int pos = start_step == 1 ? data_.attacker_start : s.code[start_step - 2];
    for (int i = start_step - 1; i < data_.n; ++i) {
      const std::vector<int>& moves = attacker_moves_[pos];
      pos = moves[uniform_index(rng, moves.size())];
      out.code[i] = pos;
    }
    return out;
  }
  // One list of the plan is rewritten per call: the joint default path or a
  // single event continuation, chosen uniformly.
  const int selector = static_cast<int>(uniform_index(rng, 1 + layout_.branch_count()));
  return resample_list(s, selector, start_step, rng);
}

double SearchGame::strategy_count(Role role) const {
  const int v = vertex_count();
  if (role == Role::kAttacker) {
    std::vector<double> count(v, 0.0);
    count[data_.attacker_start] = 1.0;
    for (int step = 0; step < data_.n; ++step) {
      std::vector<double> next(v, 0.0);
      for (int w = 0; w < v; ++w) {
        if (count[w] == 0.0) continue;
        for (int m : attacker_moves_[w]) next[m] += count[w];
      }
      count = std::move(next);
    }
    return std::accumulate(count.begin(), count.end(), 0.0);
  }
  // Per unit: weight each step-t position by the number of continuation
  // choices it induces across the V event keys of step t, then sum over
  // default paths. Units multiply independently.
  double total = 1.0;
  for (int u = 0; u < layout_.units; ++u) {
    std::vector<double> dp(v, 0.0);
    dp[data_.units[u].start] = 1.0;
    for (int t = 1; t <= data_.n; ++t) {
      std::vector<double> next(v, 0.0);
      for (int w : data_.units[u].allowed) {
        if (dp[w] == 0.0) continue;
        for (int m : unit_moves_[u][w]) next[m] += dp[w];
      }
      if (t < data_.n) {
        for (int w : data_.units[u].allowed) {
          if (next[w] != 0.0) next[w] *= dpow(continuation_count(u, w, data_.n - t), v);
        }
      }
      dp = std::move(next);
    }
    total *= std::accumulate(dp.begin(), dp.end(), 0.0);
  }
  return total;
}

StrategySpace SearchGame::enumerate_strategies(Role role) const {
  const std::uint64_t cap = enumeration_cap();
  const double total = strategy_count(role);
  if (total > static_cast<double>(cap)) {
    throw CapacityError("seg: " + std::string(role_name(role)) + " strategy count " +
                        format_double(total, 3) + " exceeds cap " + std::to_string(cap));
  }
  StrategySpace space;
  space.role = role;
  space.strategies.reserve(static_cast<std::size_t>(total));
  if (role == Role::kAttacker) {
    PureStrategy current;
    current.code.resize(data_.n);
    auto dfs = [&](auto&& self, int pos, int depth) -> void {
      if (depth == data_.n) {
        space.strategies.push_back(current);
        return;
      }
      for (int m : attacker_moves_[pos]) {
        current.code[depth] = m;
        self(self, m, depth + 1);
      }
    };
    dfs(dfs, data_.attacker_start, 0);
    return space;
  }
  const SegLayout& L = layout_;
  PureStrategy current;
  current.code.assign(L.total_length(), 0);
  // Depth-first in flat code order: the defaults of each unit, then every
  // event continuation block, so the output is sorted lexicographically.
  auto branch_block = [&](auto&& self, int k, int u) -> void {
    if (k == L.branch_count()) {
      space.strategies.push_back(current);
      return;
    }
    const int t = L.branch_key_step(k);
    const int len = L.branch_length(k);
    auto walk = [&](auto&& wself, int j, int pos) -> void {
      if (j == len) {
        if (u + 1 < L.units) {
          self(self, k, u + 1);
        } else {
          self(self, k + 1, 0);
        }
        return;
      }
      const std::vector<int>& moves = unit_moves_[u][pos];
      for (int idx = 0; idx < static_cast<int>(moves.size()); ++idx) {
        current.code[L.branch_offset(k, u) + j] = idx;
        wself(wself, j + 1, moves[idx]);
      }
    };
    walk(walk, 0, current.code[L.default_offset(u) + t - 1]);
  };
  auto defaults = [&](auto&& self, int u, int i, int pos) -> void {
    if (i == data_.n) {
      if (u + 1 < L.units) {
        self(self, u + 1, 0, data_.units[u + 1].start);
      } else {
        branch_block(branch_block, 0, 0);
      }
      return;
    }
    for (int m : unit_moves_[u][pos]) {
      current.code[L.default_offset(u) + i] = m;
      self(self, u, i + 1, m);
    }
  };
  defaults(defaults, 0, 0, data_.units[0].start);
  return space;
}

const std::vector<std::string>& SearchGame::preset_names() {
  static const std::vector<std::string> names = {"narrow", "medium", "wide"};
  return names;
}

SearchGame SearchGame::generate(const std::string& preset, int n, Rng& rng) {
  if (n < 1) throw ValidationError("seg generate: need at least 1 step");
  Data d;
  d.n = n;
  d.attacker_start = 0;
  int v = 0;
  std::vector<int> targets;
  auto both = [&](int a, int b) {
    d.edges.emplace_back(a, b);
    d.edges.emplace_back(b, a);
  };
  if (preset == "narrow") {
    // Source, a patrolled gate layer {1,2}, and two exits: 3 is coverable
    // only at the gates, 4 is held by a stationary guard.
    v = 5;
    d.edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}, {2, 4}};
    both(1, 2);
    d.units.push_back({1, {1, 2}});
    d.units.push_back({4, {4}});
    targets = {3, 4};
  } else if (preset == "medium") {
    // Two layers of gates between the source and the exits.
    v = 8;
    d.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {4, 6}, {5, 7}};
    both(1, 2);
    both(2, 3);
    both(4, 5);
    d.units.push_back({2, {1, 2, 3}});
    d.units.push_back({4, {4, 5}});
    targets = {6, 7};
  } else if (preset == "wide") {
    // Three entry corridors fanning into a four-vertex middle band.
    v = 10;
    d.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 5}, {2, 5}, {2, 6},
               {3, 6}, {3, 7}, {4, 8}, {5, 8}, {6, 9}, {7, 9}};
    both(1, 2);
    both(2, 3);
    both(4, 5);
    both(5, 6);
    both(6, 7);
    d.units.push_back({2, {1, 2, 3}});
    d.units.push_back({5, {4, 5, 6, 7}});
    targets = {8, 9};
  } else {
    throw ValidationError("seg generate: unknown preset '" + preset + "'");
  }
  d.payoffs.resize(v);
  d.target.assign(v, false);
  for (int t : targets) d.target[t] = true;
  for (int w = 0; w < v; ++w) {
    d.payoffs[w].defender_reward = quantize9(uniform_real(rng, 1.0, 2.0));
    d.payoffs[w].attacker_penalty = -1.0;
    if (d.target[w]) {
      d.payoffs[w].attacker_reward = quantize9(uniform_real(rng, 1.0, 2.0));
      d.payoffs[w].defender_penalty = -1.0;
    }
  }
  return SearchGame(std::move(d));
}

}  // namespace stackevo::seg
