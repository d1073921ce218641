#include "stackevo/whg.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "stackevo/format.hpp"

namespace stackevo::whg {

namespace {

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int from) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> q;
  dist[from] = 0;
  q.push(from);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

}  // namespace

WarehouseGame::WarehouseGame(Data data) : data_(std::move(data)) {
  const int v = vertex_count();
  if (v < 1) throw ValidationError("whg: no vertices");
  if (data_.n < 1) throw ValidationError("whg: n must be >= 1");
  if (static_cast<int>(data_.target.size()) != v) {
    throw ValidationError("whg: target flag count does not match vertex count");
  }
  std::vector<std::vector<int>> adj(v);
  for (const auto& [a, b] : data_.edges) {
    if (a < 0 || a >= v || b < 0 || b >= v) {
      throw ValidationError("whg: edge endpoint out of range: [" + std::to_string(a) + "," +
                            std::to_string(b) + "]");
    }
    if (a == b) throw ValidationError("whg: self-loop at vertex " + std::to_string(a));
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  moves_.resize(v);
  for (int i = 0; i < v; ++i) {
    std::sort(adj[i].begin(), adj[i].end());
    adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
    moves_[i] = adj[i];
    moves_[i].insert(std::lower_bound(moves_[i].begin(), moves_[i].end(), i), i);
  }
  if (data_.defender_start < 0 || data_.defender_start >= v ||
      data_.attacker_start < 0 || data_.attacker_start >= v) {
    throw ValidationError("whg: start vertex out of range");
  }
  if (data_.defender_start == data_.attacker_start) {
    throw ValidationError("whg: defender and attacker must start at distinct vertices");
  }
  for (int i = 0; i < v; ++i) {
    if (data_.target[i]) target_list_.push_back(i);
  }
  if (target_list_.empty()) throw ValidationError("whg: no target vertices");
  for (int t : target_list_) {
    if (!(data_.payoffs[t].attacker_reward > 0.0)) {
      throw ValidationError("whg: target " + std::to_string(t) +
                            " must have a positive attacker reward");
    }
    if (!(data_.payoffs[t].defender_penalty < 0.0)) {
      throw ValidationError("whg: target " + std::to_string(t) +
                            " must have a negative defender penalty");
    }
  }
  const auto dist = bfs_distances(adj, 0);
  if (std::any_of(dist.begin(), dist.end(), [](int d) { return d < 0; })) {
    throw ValidationError("whg: graph is not connected");
  }
}

PayoffPair WarehouseGame::simulate_impl(const PureStrategy& defender,
                                        const PureStrategy& attacker) const {
  for (int i = 0; i < data_.n; ++i) {
    const int dv = defender.code[i];
    const int av = attacker.code[i];
    // Interception takes priority over target capture within a step.
    if (dv == av) {
      return {data_.payoffs[dv].defender_reward, data_.payoffs[dv].attacker_penalty};
    }
    if (data_.target[av]) {
      return {data_.payoffs[av].defender_penalty, data_.payoffs[av].attacker_reward};
    }
  }
  return {0.0, 0.0};
}

void WarehouseGame::validate_strategy(const PureStrategy& s, Role role) const {
  if (static_cast<int>(s.code.size()) != data_.n) {
    throw ValidationError(std::string("whg ") + role_name(role) + " path: expected " +
                          std::to_string(data_.n) + " steps, got " +
                          std::to_string(s.code.size()));
  }
  int pos = start_of(role);
  for (int i = 0; i < data_.n; ++i) {
    const int next = s.code[i];
    if (next < 0 || next >= vertex_count() ||
        !std::binary_search(moves_[pos].begin(), moves_[pos].end(), next)) {
      throw ValidationError(std::string("whg ") + role_name(role) + " path: step " +
                            std::to_string(i + 1) + ": vertex " + std::to_string(next) +
                            " is not reachable from vertex " + std::to_string(pos));
    }
    pos = next;
  }
}

PureStrategy WarehouseGame::random_pure_strategy(Role role, Rng& rng) const {
  PureStrategy s;
  s.code.resize(data_.n);
  int pos = start_of(role);
  for (int i = 0; i < data_.n; ++i) {
    const auto& moves = moves_[pos];
    if (moves.empty()) throw GameError("whg: empty move set at vertex " + std::to_string(pos));
    pos = moves[uniform_index(rng, moves.size())];
    s.code[i] = pos;
  }
  return s;
}

PureStrategy WarehouseGame::resample_suffix(const PureStrategy& s, Role role, int start_step,
                                            Rng& rng) const {
  validate_strategy(s, role);
  if (start_step < 1 || start_step > data_.n) {
    throw ValidationError("whg resample: step " + std::to_string(start_step) +
                          " outside [1," + std::to_string(data_.n) + "]");
  }
  PureStrategy out = s;
  int pos = start_step == 1 ? start_of(role) : s.code[start_step - 2];
  for (int i = start_step - 1; i < data_.n; ++i) {
    const auto& moves = moves_[pos];
    pos = moves[uniform_index(rng, moves.size())];
    out.code[i] = pos;
  }
  return out;
}

double WarehouseGame::strategy_count(Role role) const {
  std::vector<double> count(vertex_count(), 0.0);
  count[start_of(role)] = 1.0;
  for (int step = 0; step < data_.n; ++step) {
    std::vector<double> next(vertex_count(), 0.0);
    for (int v = 0; v < vertex_count(); ++v) {
      if (count[v] == 0.0) continue;
      for (int m : moves_[v]) next[m] += count[v];
    }
    count = std::move(next);
  }
  return std::accumulate(count.begin(), count.end(), 0.0);
}

StrategySpace WarehouseGame::enumerate_strategies(Role role) const {
  const std::uint64_t cap = enumeration_cap();
  const double total = strategy_count(role);
  if (total > static_cast<double>(cap)) {
    throw CapacityError("whg: " + std::string(role_name(role)) + " strategy count " +
                        format_double(total, 3) + " exceeds cap " + std::to_string(cap));
  }
  StrategySpace space;
  space.role = role;
  space.strategies.reserve(static_cast<std::size_t>(total));
  PureStrategy current;
  current.code.resize(data_.n);
  // Depth-first over moves in ascending vertex order.
  auto dfs = [&](auto&& self, int pos, int depth) -> void {
    if (depth == data_.n) {
      space.strategies.push_back(current);
      return;
    }
    for (int m : moves_[pos]) {
      current.code[depth] = m;
      self(self, m, depth + 1);
    }
  };
  dfs(dfs, start_of(role), 0);
  return space;
}

WarehouseGame WarehouseGame::generate(int v_count, int n, Rng& rng) {
  if (v_count < 4) throw ValidationError("whg generate: need at least 4 vertices");
  if (n < 1) throw ValidationError("whg generate: need at least 1 step");

  int rows = 1;
  while ((rows + 1) * (rows + 1) <= v_count) ++rows;
  const int cols = (v_count + rows - 1) / rows;

  // Candidate corridors: grid neighbors. A wall is opened with probability
  // 0.8; afterwards missing corridors are re-opened until connected.
  std::vector<std::pair<int, int>> candidates;
  for (int v = 0; v < v_count; ++v) {
    const int r = v / cols;
    const int c = v % cols;
    if (c + 1 < cols && v + 1 < v_count) candidates.emplace_back(v, v + 1);
    if ((r + 1) * cols + c < v_count) candidates.emplace_back(v, (r + 1) * cols + c);
  }
  std::vector<std::pair<int, int>> edges;
  std::vector<std::pair<int, int>> closed;
  for (const auto& e : candidates) {
    if (uniform_real01(rng) < 0.8) {
      edges.push_back(e);
    } else {
      closed.push_back(e);
    }
  }
  std::vector<int> parent(v_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [a, b] : edges) parent[find(a)] = find(b);
  shuffle(closed, rng);
  for (const auto& [a, b] : closed) {
    if (find(a) != find(b)) {
      parent[find(a)] = find(b);
      edges.emplace_back(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());

  std::vector<std::vector<int>> adj(v_count);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }

  Data d;
  d.n = n;
  d.edges = edges;
  d.defender_start = static_cast<int>(uniform_index(rng, v_count));
  d.target.assign(v_count, false);

  // Targets sit in the far half of the graph as seen from the defender start.
  const auto ddist = bfs_distances(adj, d.defender_start);
  const int max_dist = *std::max_element(ddist.begin(), ddist.end());
  std::vector<int> far;
  for (int v = 0; v < v_count; ++v) {
    if (v != d.defender_start && 2 * ddist[v] >= max_dist) far.push_back(v);
  }
  const int want = 1 + static_cast<int>(uniform_index(rng, 3));
  // Leave room for the attacker start besides the defender start and targets.
  const int t_count =
      std::min({want, static_cast<int>(far.size()), v_count - 2});
  shuffle(far, rng);
  for (int i = 0; i < t_count; ++i) d.target[far[i]] = true;

  std::vector<int> tdist(v_count, -1);
  {
    std::queue<int> q;
    for (int v = 0; v < v_count; ++v) {
      if (d.target[v]) {
        tdist[v] = 0;
        q.push(v);
      }
    }
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (tdist[w] < 0) {
          tdist[w] = tdist[v] + 1;
          q.push(w);
        }
      }
    }
  }
  std::vector<int> attacker_options;
  for (int v = 0; v < v_count; ++v) {
    if (v == d.defender_start || d.target[v]) continue;
    if (tdist[v] >= 1 && tdist[v] <= n) attacker_options.push_back(v);
  }
  if (attacker_options.empty()) {
    for (int v = 0; v < v_count; ++v) {
      if (v != d.defender_start && !d.target[v]) attacker_options.push_back(v);
    }
  }
  if (attacker_options.empty()) {
    throw GameError("whg generate: no feasible attacker start");
  }
  d.attacker_start = attacker_options[uniform_index(rng, attacker_options.size())];

  d.payoffs.resize(v_count);
  for (int v = 0; v < v_count; ++v) {
    d.payoffs[v].defender_reward = quantize9(uniform_real(rng, 1.0, 2.0));
    d.payoffs[v].attacker_penalty = -1.0;
    if (d.target[v]) {
      d.payoffs[v].attacker_reward = quantize9(uniform_real(rng, 1.0, 2.0));
      d.payoffs[v].defender_penalty = -1.0;
    }
  }
  return WarehouseGame(std::move(d));
}

}  // namespace stackevo::whg
