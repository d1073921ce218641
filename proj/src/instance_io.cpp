#include "stackevo/instance_io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stackevo/common.hpp"
#include "stackevo/fig.hpp"
#include "stackevo/format.hpp"
#include "stackevo/seg.hpp"
#include "stackevo/whg.hpp"

namespace stackevo::io {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Canonical writer. The layout is built by hand so the byte stream is fully
// pinned: fixed key order, no whitespace, %.9g doubles, trailing newline.

void append_edges(std::string& out, const std::vector<std::pair<int, int>>& edges) {
  out += '[';
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0) out += ',';
    out += '[';
    out += std::to_string(edges[i].first);
    out += ',';
    out += std::to_string(edges[i].second);
    out += ']';
  }
  out += ']';
}

void append_int_list(std::string& out, const std::vector<int>& xs) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(xs[i]);
  }
  out += ']';
}

void append_double_list(std::string& out, const std::vector<double>& xs) {
  out += '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += format_double(xs[i]);
  }
  out += ']';
}

void append_vertices(std::string& out, const std::vector<VertexPayoffs>& payoffs,
                     const std::vector<bool>& target) {
  out += '[';
  for (std::size_t v = 0; v < payoffs.size(); ++v) {
    if (v > 0) out += ',';
    out += "{\"id\":";
    out += std::to_string(v);
    out += ",\"payoffs\":";
    append_double_list(out, {payoffs[v].attacker_reward, payoffs[v].attacker_penalty,
                             payoffs[v].defender_reward, payoffs[v].defender_penalty});
    out += ",\"target\":";
    out += target[v] ? "true" : "false";
    out += '}';
  }
  out += ']';
}

std::string save_whg(const whg::WarehouseGame& g) {
  const whg::WarehouseGame::Data& d = g.data();
  std::string out = "{\"type\":\"whg\",\"n\":";
  out += std::to_string(d.n);
  out += ",\"vertices\":";
  append_vertices(out, d.payoffs, d.target);
  out += ",\"edges\":";
  append_edges(out, d.edges);
  out += ",\"defender_start\":";
  out += std::to_string(d.defender_start);
  out += ",\"attacker_start\":";
  out += std::to_string(d.attacker_start);
  out += "}\n";
  return out;
}

std::string save_seg(const seg::SearchGame& g) {
  const seg::SearchGame::Data& d = g.data();
  std::string out = "{\"type\":\"seg\",\"n\":";
  out += std::to_string(d.n);
  out += ",\"vertices\":";
  append_vertices(out, d.payoffs, d.target);
  out += ",\"edges\":";
  append_edges(out, d.edges);
  out += ",\"units\":[";
  for (std::size_t u = 0; u < d.units.size(); ++u) {
    if (u > 0) out += ',';
    out += "{\"start\":";
    out += std::to_string(d.units[u].start);
    out += ",\"allowed\":";
    append_int_list(out, d.units[u].allowed);
    out += '}';
  }
  out += "],\"attacker_start\":";
  out += std::to_string(d.attacker_start);
  out += "}\n";
  return out;
}

std::string save_fig(const fig::FlipItGame& g) {
  const fig::FlipItGame::Data& d = g.data();
  std::string out = "{\"type\":\"fig\",\"edges\":";
  append_edges(out, d.edges);
  out += ",\"entries\":";
  append_int_list(out, d.entries);
  out += ",\"cost\":";
  append_double_list(out, d.cost);
  out += ",\"reward\":";
  append_double_list(out, d.reward);
  out += ",\"rounds\":";
  out += std::to_string(d.rounds);
  out += "}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Loader. Every object is checked against its exact field list; anything
// unknown, missing, or of the wrong JSON type is a ValidationError naming
// the field.

void check_fields(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (item.key() == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ValidationError(where + ": unknown field \"" + item.key() + "\"");
    }
  }
}

const json& field(const json& obj, const std::string& where, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing field \"" + std::string(name) + "\"");
  }
  return *it;
}

int get_int(const json& obj, const std::string& where, const char* name) {
  const json& v = field(obj, where, name);
  if (!v.is_number_integer()) {
    throw ValidationError(where + ": field \"" + std::string(name) + "\" must be an integer");
  }
  return v.get<int>();
}

bool get_bool(const json& obj, const std::string& where, const char* name) {
  const json& v = field(obj, where, name);
  if (!v.is_boolean()) {
    throw ValidationError(where + ": field \"" + std::string(name) + "\" must be a boolean");
  }
  return v.get<bool>();
}

std::vector<double> get_double_list(const json& obj, const std::string& where,
                                    const char* name) {
  const json& v = field(obj, where, name);
  if (!v.is_array()) {
    throw ValidationError(where + ": field \"" + std::string(name) + "\" must be an array");
  }
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) {
      throw ValidationError(where + ": field \"" + std::string(name) +
                            "\" must hold numbers only");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<int> get_int_list(const json& obj, const std::string& where, const char* name) {
  const json& v = field(obj, where, name);
  if (!v.is_array()) {
    throw ValidationError(where + ": field \"" + std::string(name) + "\" must be an array");
  }
  std::vector<int> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number_integer()) {
      throw ValidationError(where + ": field \"" + std::string(name) +
                            "\" must hold integers only");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<std::pair<int, int>> get_edges(const json& obj, const std::string& where) {
  const json& v = field(obj, where, "edges");
  if (!v.is_array()) throw ValidationError(where + ": field \"edges\" must be an array");
  std::vector<std::pair<int, int>> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
        !e[1].is_number_integer()) {
      throw ValidationError(where + ": field \"edges\" must hold [from,to] integer pairs");
    }
    out.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return out;
}

void parse_vertices(const json& obj, const std::string& where,
                    std::vector<VertexPayoffs>& payoffs, std::vector<bool>& target) {
  const json& v = field(obj, where, "vertices");
  if (!v.is_array()) throw ValidationError(where + ": field \"vertices\" must be an array");
  payoffs.clear();
  target.clear();
  int idx = 0;
  for (const json& entry : v) {
    const std::string vwhere = where + " vertex " + std::to_string(idx);
    if (!entry.is_object()) throw ValidationError(vwhere + ": must be an object");
    check_fields(entry, vwhere, {"id", "payoffs", "target"});
    const int id = get_int(entry, vwhere, "id");
    if (id != idx) {
      throw ValidationError(vwhere + ": field \"id\" is " + std::to_string(id) +
                            " but vertices must be listed in id order starting at 0");
    }
    const std::vector<double> p = get_double_list(entry, vwhere, "payoffs");
    if (p.size() != 4) {
      throw ValidationError(vwhere +
                            ": field \"payoffs\" must hold [aPlus,aMinus,dPlus,dMinus]");
    }
    payoffs.push_back({p[0], p[1], p[2], p[3]});
    target.push_back(get_bool(entry, vwhere, "target"));
    ++idx;
  }
}

std::unique_ptr<GameModel> load_whg(const json& j) {
  const std::string where = "whg instance";
  check_fields(j, where,
               {"type", "n", "vertices", "edges", "defender_start", "attacker_start"});
  whg::WarehouseGame::Data d;
  d.n = get_int(j, where, "n");
  parse_vertices(j, where, d.payoffs, d.target);
  d.edges = get_edges(j, where);
  d.defender_start = get_int(j, where, "defender_start");
  d.attacker_start = get_int(j, where, "attacker_start");
  return std::make_unique<whg::WarehouseGame>(std::move(d));
}

std::unique_ptr<GameModel> load_seg(const json& j) {
  const std::string where = "seg instance";
  check_fields(j, where, {"type", "n", "vertices", "edges", "units", "attacker_start"});
  seg::SearchGame::Data d;
  d.n = get_int(j, where, "n");
  parse_vertices(j, where, d.payoffs, d.target);
  d.edges = get_edges(j, where);
  const json& units = field(j, where, "units");
  if (!units.is_array()) throw ValidationError(where + ": field \"units\" must be an array");
  int idx = 0;
  for (const json& u : units) {
    const std::string uwhere = where + " unit " + std::to_string(idx++);
    if (!u.is_object()) throw ValidationError(uwhere + ": must be an object");
    check_fields(u, uwhere, {"start", "allowed"});
    seg::SearchGame::Unit unit;
    unit.start = get_int(u, uwhere, "start");
    unit.allowed = get_int_list(u, uwhere, "allowed");
    d.units.push_back(std::move(unit));
  }
  d.attacker_start = get_int(j, where, "attacker_start");
  return std::make_unique<seg::SearchGame>(std::move(d));
}

std::unique_ptr<GameModel> load_fig(const json& j) {
  const std::string where = "fig instance";
  check_fields(j, where, {"type", "edges", "entries", "cost", "reward", "rounds"});
  fig::FlipItGame::Data d;
  d.edges = get_edges(j, where);
  d.entries = get_int_list(j, where, "entries");
  d.cost = get_double_list(j, where, "cost");
  d.reward = get_double_list(j, where, "reward");
  d.rounds = get_int(j, where, "rounds");
  return std::make_unique<fig::FlipItGame>(std::move(d));
}

}  // namespace

std::string save_game(const GameModel& game) {
  if (const auto* g = dynamic_cast<const whg::WarehouseGame*>(&game)) return save_whg(*g);
  if (const auto* g = dynamic_cast<const seg::SearchGame*>(&game)) return save_seg(*g);
  if (const auto* g = dynamic_cast<const fig::FlipItGame*>(&game)) return save_fig(*g);
  throw GameError("instance: unknown game class '" + game.type_name() + "'");
}

std::unique_ptr<GameModel> load_game(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("instance: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("instance: top level must be a JSON object");
  const json& t = field(j, "instance", "type");
  if (!t.is_string()) throw ValidationError("instance: field \"type\" must be a string");
  const std::string type = t.get<std::string>();
  if (type == "whg") return load_whg(j);
  if (type == "seg") return load_seg(j);
  if (type == "fig") return load_fig(j);
  throw ValidationError("instance: unknown type \"" + type + "\"");
}

std::unique_ptr<GameModel> load_game_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("instance: cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_game(buf.str());
}

void save_game_file(const GameModel& game, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("instance: cannot open file for writing: " + path);
  out << save_game(game);
  out.flush();
  if (!out) throw ValidationError("instance: write failed: " + path);
}

}  // namespace stackevo::io
