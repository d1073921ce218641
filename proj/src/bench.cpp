#include "stackevo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "json.hpp"
#include "stackevo/common.hpp"
#include "stackevo/fig.hpp"
#include "stackevo/format.hpp"
#include "stackevo/instance_io.hpp"
#include "stackevo/oracle.hpp"
#include "stackevo/rng.hpp"
#include "stackevo/seg.hpp"
#include "stackevo/whg.hpp"

namespace stackevo::bench {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

bool valid_id(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

// --------------------------------------------------------------------------
// Config parsing.

void check_fields(const ojson& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* name : allowed) {
      if (item.key() == name) known = true;
    }
    if (!known) throw ValidationError(where + ": unknown field \"" + item.key() + "\"");
  }
}

const ojson& field(const ojson& obj, const std::string& where, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing field \"" + std::string(name) + "\"");
  }
  return *it;
}

int get_int(const ojson& obj, const std::string& where, const char* name) {
  const ojson& v = field(obj, where, name);
  if (!v.is_number_integer()) {
    throw ValidationError(where + ": field \"" + std::string(name) + "\" must be an integer");
  }
  return v.get<int>();
}

double get_number(const ojson& obj, const std::string& where, const char* name) {
  const ojson& v = field(obj, where, name);
  if (!v.is_number()) {
    throw ValidationError(where + ": field \"" + std::string(name) + "\" must be a number");
  }
  return v.get<double>();
}

std::string get_string(const ojson& obj, const std::string& where, const char* name) {
  const ojson& v = field(obj, where, name);
  if (!v.is_string()) {
    throw ValidationError(where + ": field \"" + std::string(name) + "\" must be a string");
  }
  return v.get<std::string>();
}

std::uint64_t get_seed(const ojson& obj, const std::string& where, const char* name) {
  const ojson& v = field(obj, where, name);
  if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                 v.get<std::int64_t>() < 0)) {
    throw ValidationError(where + ": field \"" + std::string(name) +
                          "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::shared_ptr<const GameModel> build_generated(const ojson& gen, const std::string& where) {
  const std::string type = get_string(gen, where, "type");
  if (type == "whg") {
    check_fields(gen, where, {"type", "size", "steps", "seed"});
    const int size = get_int(gen, where, "size");
    const int steps = get_int(gen, where, "steps");
    Rng rng(get_seed(gen, where, "seed"));
    return std::make_shared<whg::WarehouseGame>(whg::WarehouseGame::generate(size, steps, rng));
  }
  if (type == "seg") {
    check_fields(gen, where, {"type", "preset", "steps", "seed"});
    const std::string preset = get_string(gen, where, "preset");
    const int steps = get_int(gen, where, "steps");
    Rng rng(get_seed(gen, where, "seed"));
    return std::make_shared<seg::SearchGame>(seg::SearchGame::generate(preset, steps, rng));
  }
  if (type == "fig") {
    check_fields(gen, where, {"type", "preset", "steps", "seed"});
    const std::string preset = get_string(gen, where, "preset");
    const int steps = get_int(gen, where, "steps");
    Rng rng(get_seed(gen, where, "seed"));
    return std::make_shared<fig::FlipItGame>(fig::FlipItGame::generate(preset, steps, rng));
  }
  throw ValidationError(where + ": unknown generator type \"" + type + "\"");
}

const std::initializer_list<const char*> kParamNames = {"p_size", "n_g", "n_c", "p_m",
                                                        "p_c",    "p_s", "elite"};

bool int_param(const std::string& name) {
  return name == "p_size" || name == "n_g" || name == "n_c" || name == "elite";
}

void set_param(easg::EasgParams& p, const std::string& name, double value) {
  if (name == "p_size") {
    p.p_size = static_cast<int>(std::lround(value));
  } else if (name == "n_g") {
    p.n_g = static_cast<int>(std::lround(value));
  } else if (name == "n_c") {
    p.n_c = static_cast<int>(std::lround(value));
  } else if (name == "elite") {
    p.elite = static_cast<int>(std::lround(value));
  } else if (name == "p_m") {
    p.p_m = value;
  } else if (name == "p_c") {
    p.p_c = value;
  } else if (name == "p_s") {
    p.p_s = value;
  } else {
    throw ValidationError("sweep: unknown parameter \"" + name + "\"");
  }
}

// --------------------------------------------------------------------------
// Cell execution.

std::vector<RunRecord> run_cells(const std::vector<BenchGame>& games,
                                 const easg::EasgParams& params, int runs,
                                 std::uint64_t base_seed, int jobs) {
  const std::size_t total = games.size() * static_cast<std::size_t>(runs);
  std::vector<RunRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        const BenchGame& bg = games[i / static_cast<std::size_t>(runs)];
        const int run = static_cast<int>(i % static_cast<std::size_t>(runs));
        RunRecord& rec = records[i];
        rec.game_id = bg.id;
        rec.run = run;
        rec.seed = derive_seed(base_seed, bg.id, static_cast<std::uint64_t>(run));
        easg::RunResult rr = easg::run(*bg.game, params, rec.seed);
        rec.best_fitness = quantize9(rr.best_fitness);
        rec.generations = rr.generations_run;
        rec.wall_time_s = quantize9(rr.wall_time_s);
        rec.history = std::move(rr.history);
        for (easg::GenerationStats& h : rec.history) {
          h.best = quantize9(h.best);
          h.mean = quantize9(h.mean);
          h.min = quantize9(h.min);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  const int n_threads = std::min<std::size_t>(std::max(jobs, 1), std::max<std::size_t>(total, 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return records;
}

struct OracleOutcome {
  GameInfo info;
  bool attempted = false;
  bool solved = false;
  double time_s = 0.0;
};

OracleOutcome solve_info(const BenchGame& bg, bool compute_exact) {
  OracleOutcome out;
  out.info.id = bg.id;
  out.info.type = bg.game->type_name();
  out.info.steps = bg.game->steps();
  if (!compute_exact) return out;
  out.attempted = true;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const oracle::PayoffMatrices m = oracle::build_matrices(*bg.game);
    const oracle::SseSolution sol = oracle::solve_sse(m);
    const auto [lo, hi] = oracle::defender_payoff_extrema(m);
    out.info.has_sse = true;
    out.info.sse_value = quantize9(sol.value);
    out.info.payoff_lo = quantize9(lo);
    out.info.payoff_hi = quantize9(hi);
    out.solved = true;
  } catch (const CapacityError&) {
    // Too large for exact solving: the game keeps running without gaps.
  }
  out.time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// --------------------------------------------------------------------------
// Aggregation. Pure function of (games.json, runs.jsonl) content so reports
// can be regenerated bit-identically from the persisted logs.

ExperimentReport compute_report(const std::vector<GameInfo>& infos,
                                const std::vector<RunRecord>& records) {
  std::map<std::string, std::vector<const RunRecord*>> by_game;
  for (const RunRecord& r : records) by_game[r.game_id].push_back(&r);

  ExperimentReport rep;
  for (const GameInfo& info : infos) {
    const auto it = by_game.find(info.id);
    if (it == by_game.end() || it->second.empty()) {
      throw ValidationError("bench: no runs logged for game \"" + info.id + "\"");
    }
    std::vector<const RunRecord*> runs = it->second;
    std::sort(runs.begin(), runs.end(),
              [](const RunRecord* a, const RunRecord* b) { return a->run < b->run; });
    const double n = static_cast<double>(runs.size());

    ReportRow row;
    row.game_id = info.id;
    row.steps = info.steps;
    row.type = info.type;
    row.has_sse = info.has_sse;
    row.sse_value = info.sse_value;

    double sum = 0.0;
    row.best = runs.front()->best_fitness;
    std::vector<int> gens;
    for (const RunRecord* r : runs) {
      row.best = std::max(row.best, r->best_fitness);
      sum += r->best_fitness;
      gens.push_back(r->generations);
      row.time_mean_s += r->wall_time_s;
    }
    row.mean = sum / n;
    row.time_mean_s /= n;
    if (runs.size() > 1) {
      double ss = 0.0;
      for (const RunRecord* r : runs) {
        ss += (r->best_fitness - row.mean) * (r->best_fitness - row.mean);
      }
      row.stddev = std::sqrt(ss / (n - 1.0));
    }
    std::sort(gens.begin(), gens.end());
    row.gen_max = gens.back();
    row.gen_median = gens.size() % 2 == 1
                         ? static_cast<double>(gens[gens.size() / 2])
                         : (gens[gens.size() / 2 - 1] + gens[gens.size() / 2]) / 2.0;

    if (info.has_sse) {
      const double span = info.payoff_hi - info.payoff_lo;
      const double norm = span > 0.0 ? 2.0 / span : 0.0;
      // Report-column gaps: raw payoff differences, except fig which is
      // reported on the normalized [-1, 1] payoff scale.
      const double column = info.type == "fig" ? norm : 1.0;
      double gsum = 0.0, gmax = 0.0;
      int optimal = 0;
      bool first = true;
      for (const RunRecord* r : runs) {
        const double raw = info.sse_value - r->best_fitness;
        if (raw < -1e-6) {
          throw GameError("bench: run " + std::to_string(r->run) + " of game \"" + info.id +
                          "\" exceeds the exact optimum");
        }
        const double gap = column * raw;
        gsum += gap;
        gmax = first ? gap : std::max(gmax, gap);
        first = false;
        if (gap <= kOptimalTol) ++optimal;
        double g = norm * raw;
        if (g < 0.0) g = 0.0;
        std::size_t bin = kGapBinEdges.size() + 1;
        if (g <= kOptimalTol) {
          bin = 0;
        } else {
          for (std::size_t k = 0; k < kGapBinEdges.size(); ++k) {
            if (g <= kGapBinEdges[k]) {
              bin = k + 1;
              break;
            }
          }
        }
        ++rep.gap_hist[bin];
      }
      row.gap_mean = gsum / n;
      row.gap_max = gmax;
      row.frac_optimal = optimal / n;
      rep.runs_with_gap += static_cast<std::int64_t>(runs.size());
    }
    for (int g : gens) {
      std::size_t bin = kGenBinEdges.size();
      for (std::size_t k = 0; k < kGenBinEdges.size(); ++k) {
        if (g <= kGenBinEdges[k]) {
          bin = k;
          break;
        }
      }
      ++rep.gen_hist[bin];
    }
    rep.runs_total += static_cast<std::int64_t>(runs.size());
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// --------------------------------------------------------------------------
// Persistence.

std::string info_json(const GameInfo& info) {
  std::string out = "{\"id\":\"" + info.id + "\",\"type\":\"" + info.type +
                    "\",\"steps\":" + std::to_string(info.steps);
  if (info.has_sse) {
    out += ",\"sse_value\":" + format_double(info.sse_value);
    out += ",\"payoff_lo\":" + format_double(info.payoff_lo);
    out += ",\"payoff_hi\":" + format_double(info.payoff_hi);
  }
  out += "}";
  return out;
}

std::string record_json(const RunRecord& rec) {
  std::string out = "{\"game_id\":\"" + rec.game_id + "\",\"run\":" + std::to_string(rec.run) +
                    ",\"seed\":" + std::to_string(rec.seed) +
                    ",\"best_fitness\":" + format_double(rec.best_fitness) +
                    ",\"generations\":" + std::to_string(rec.generations) +
                    ",\"wall_time_s\":" + format_double(rec.wall_time_s) + ",\"history\":[";
  for (std::size_t i = 0; i < rec.history.size(); ++i) {
    if (i > 0) out += ',';
    out += '[';
    out += format_double(rec.history[i].best);
    out += ',';
    out += format_double(rec.history[i].mean);
    out += ',';
    out += format_double(rec.history[i].min);
    out += ']';
  }
  out += "]}";
  return out;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("bench: cannot open file for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw ValidationError("bench: write failed: " + path.string());
}

void write_outputs(const std::string& dir, const ExperimentConfig& cfg,
                   const std::vector<GameInfo>& infos, const std::vector<RunRecord>& records,
                   const ExperimentReport& report) {
  const fs::path root(dir);
  fs::create_directories(root / "games");
  for (const BenchGame& g : cfg.games) {
    io::save_game_file(*g.game, (root / "games" / (g.id + ".json")).string());
  }
  std::string games = "[\n";
  for (std::size_t i = 0; i < infos.size(); ++i) {
    games += info_json(infos[i]);
    if (i + 1 < infos.size()) games += ',';
    games += '\n';
  }
  games += "]\n";
  write_file(root / "games.json", games);
  std::string runs;
  for (const RunRecord& rec : records) {
    runs += record_json(rec);
    runs += '\n';
  }
  write_file(root / "runs.jsonl", runs);
  write_file(root / "report.csv", report_csv(report));
}

void validate_games(const std::vector<BenchGame>& games) {
  if (games.empty()) throw ValidationError("bench: game list is empty");
  std::map<std::string, int> seen;
  for (const BenchGame& g : games) {
    if (!valid_id(g.id)) {
      throw ValidationError("bench: game id \"" + g.id +
                            "\" must be non-empty and use only [A-Za-z0-9._-]");
    }
    if (!g.game) throw ValidationError("bench: game \"" + g.id + "\" has no instance");
    if (++seen[g.id] > 1) throw ValidationError("bench: duplicate game id \"" + g.id + "\"");
  }
}

}  // namespace

ExperimentConfig load_config(const std::string& text, const std::string& base_dir) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const ojson::parse_error& e) {
    throw ValidationError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config: top level must be a JSON object");
  check_fields(j, "config",
               {"games", "params", "sweep", "runs_per_game", "base_seed", "compute_exact",
                "output_dir", "jobs"});

  ExperimentConfig cfg;
  const ojson& games = field(j, "config", "games");
  if (!games.is_array()) throw ValidationError("config: field \"games\" must be an array");
  int idx = 0;
  for (const ojson& entry : games) {
    const std::string where = "config game " + std::to_string(idx++);
    if (!entry.is_object()) throw ValidationError(where + ": must be an object");
    check_fields(entry, where, {"id", "file", "generate"});
    BenchGame bg;
    bg.id = get_string(entry, where, "id");
    if (!valid_id(bg.id)) {
      throw ValidationError(where + ": field \"id\" must be non-empty and use only "
                            "[A-Za-z0-9._-]");
    }
    const bool has_file = entry.contains("file");
    const bool has_gen = entry.contains("generate");
    if (has_file == has_gen) {
      throw ValidationError(where + ": exactly one of \"file\" or \"generate\" is required");
    }
    if (has_file) {
      std::string path = get_string(entry, where, "file");
      if (!base_dir.empty() && !fs::path(path).is_absolute()) {
        path = (fs::path(base_dir) / path).string();
      }
      bg.game = std::shared_ptr<const GameModel>(io::load_game_file(path));
    } else {
      const ojson& gen = field(entry, where, "generate");
      if (!gen.is_object()) {
        throw ValidationError(where + ": field \"generate\" must be an object");
      }
      bg.game = build_generated(gen, where + " generate");
    }
    cfg.games.push_back(std::move(bg));
  }
  // An explicitly empty list is accepted here so callers can report it as a
  // usage problem; the run entry points still reject it.
  std::map<std::string, int> seen;
  for (const BenchGame& g : cfg.games) {
    if (++seen[g.id] > 1) throw ValidationError("config: duplicate game id \"" + g.id + "\"");
  }

  if (j.contains("params")) {
    const ojson& p = field(j, "config", "params");
    if (!p.is_object()) throw ValidationError("config: field \"params\" must be an object");
    check_fields(p, "config params", kParamNames);
    for (const auto& item : p.items()) {
      if (int_param(item.key())) {
        set_param(cfg.params, item.key(), get_int(p, "config params", item.key().c_str()));
      } else {
        set_param(cfg.params, item.key(), get_number(p, "config params", item.key().c_str()));
      }
    }
    cfg.params.validate();
  }
  if (j.contains("sweep")) {
    const ojson& s = field(j, "config", "sweep");
    if (!s.is_object()) throw ValidationError("config: field \"sweep\" must be an object");
    check_fields(s, "config sweep", kParamNames);
    for (const auto& item : s.items()) {
      const ojson& vals = item.value();
      if (!vals.is_array() || vals.empty()) {
        throw ValidationError("config sweep: \"" + item.key() +
                              "\" must be a non-empty array of values");
      }
      std::vector<double> values;
      for (const ojson& v : vals) {
        if (!v.is_number()) {
          throw ValidationError("config sweep: \"" + item.key() + "\" must hold numbers only");
        }
        const double x = v.get<double>();
        if (int_param(item.key()) && x != std::floor(x)) {
          throw ValidationError("config sweep: \"" + item.key() +
                                "\" requires integer values");
        }
        values.push_back(x);
      }
      cfg.sweep.emplace_back(item.key(), std::move(values));
    }
  }
  if (j.contains("runs_per_game")) {
    cfg.runs_per_game = get_int(j, "config", "runs_per_game");
    if (cfg.runs_per_game < 1) {
      throw ValidationError("config: field \"runs_per_game\" must be >= 1");
    }
  }
  if (j.contains("base_seed")) cfg.base_seed = get_seed(j, "config", "base_seed");
  if (j.contains("compute_exact")) {
    const ojson& v = field(j, "config", "compute_exact");
    if (!v.is_boolean()) {
      throw ValidationError("config: field \"compute_exact\" must be a boolean");
    }
    cfg.compute_exact = v.get<bool>();
  }
  if (j.contains("output_dir")) cfg.output_dir = get_string(j, "config", "output_dir");
  if (j.contains("jobs")) {
    cfg.jobs = get_int(j, "config", "jobs");
    if (cfg.jobs < 1) throw ValidationError("config: field \"jobs\" must be >= 1");
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("config: cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str(), fs::path(path).parent_path().string());
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate_games(cfg.games);
  if (cfg.runs_per_game < 1) throw ValidationError("bench: runs_per_game must be >= 1");
  cfg.params.validate();

  std::vector<GameInfo> infos;
  infos.reserve(cfg.games.size());
  for (const BenchGame& g : cfg.games) {
    infos.push_back(solve_info(g, cfg.compute_exact).info);
  }
  const std::vector<RunRecord> records =
      run_cells(cfg.games, cfg.params, cfg.runs_per_game, cfg.base_seed, cfg.jobs);
  ExperimentReport report = compute_report(infos, records);
  if (!cfg.output_dir.empty()) {
    write_outputs(cfg.output_dir, cfg, infos, records, report);
  }
  return report;
}

ExperimentReport report_from_logs(const std::string& output_dir) {
  const fs::path root(output_dir);
  std::ifstream games_in(root / "games.json", std::ios::binary);
  if (!games_in) {
    throw ValidationError("bench: cannot open file: " + (root / "games.json").string());
  }
  std::ostringstream games_buf;
  games_buf << games_in.rdbuf();
  std::vector<GameInfo> infos;
  try {
    const nlohmann::json games = nlohmann::json::parse(games_buf.str());
    for (const nlohmann::json& g : games) {
      GameInfo info;
      info.id = g.at("id").get<std::string>();
      info.type = g.at("type").get<std::string>();
      info.steps = g.at("steps").get<int>();
      if (g.contains("sse_value")) {
        info.has_sse = true;
        info.sse_value = g.at("sse_value").get<double>();
        info.payoff_lo = g.at("payoff_lo").get<double>();
        info.payoff_hi = g.at("payoff_hi").get<double>();
      }
      infos.push_back(std::move(info));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bench: malformed games.json: ") + e.what());
  }

  std::ifstream runs_in(root / "runs.jsonl", std::ios::binary);
  if (!runs_in) {
    throw ValidationError("bench: cannot open file: " + (root / "runs.jsonl").string());
  }
  std::vector<RunRecord> records;
  std::string line;
  try {
    while (std::getline(runs_in, line)) {
      if (line.empty()) continue;
      const nlohmann::json r = nlohmann::json::parse(line);
      RunRecord rec;
      rec.game_id = r.at("game_id").get<std::string>();
      rec.run = r.at("run").get<int>();
      rec.seed = r.at("seed").get<std::uint64_t>();
      rec.best_fitness = r.at("best_fitness").get<double>();
      rec.generations = r.at("generations").get<int>();
      rec.wall_time_s = r.at("wall_time_s").get<double>();
      records.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bench: malformed runs.jsonl: ") + e.what());
  }
  return compute_report(infos, records);
}

std::string report_csv(const ExperimentReport& report) {
  std::string out =
      "game_id,steps,type,sse_value,best,mean,stddev,gap_mean,gap_max,frac_optimal,"
      "gen_median,gen_max,time_mean_s\n";
  for (const ReportRow& row : report.rows) {
    out += row.game_id;
    out += ',';
    out += std::to_string(row.steps);
    out += ',';
    out += row.type;
    out += ',';
    if (row.has_sse) out += format_double(row.sse_value);
    out += ',';
    out += format_double(row.best);
    out += ',';
    out += format_double(row.mean);
    out += ',';
    out += format_double(row.stddev);
    out += ',';
    if (row.has_sse) out += format_double(row.gap_mean);
    out += ',';
    if (row.has_sse) out += format_double(row.gap_max);
    out += ',';
    if (row.has_sse) out += format_double(row.frac_optimal);
    out += ',';
    out += format_double(row.gen_median);
    out += ',';
    out += std::to_string(row.gen_max);
    out += ',';
    out += format_double(row.time_mean_s);
    out += '\n';
  }
  return out;
}

std::vector<SweepPoint> parameter_sweep(const ExperimentConfig& cfg) {
  validate_games(cfg.games);
  if (cfg.sweep.empty()) throw ValidationError("bench: sweep specification is empty");
  if (cfg.runs_per_game < 1) throw ValidationError("bench: runs_per_game must be >= 1");
  std::vector<SweepPoint> points;
  for (const auto& [name, values] : cfg.sweep) {
    if (values.empty()) {
      throw ValidationError("bench: sweep list for \"" + name + "\" is empty");
    }
    for (double value : values) {
      easg::EasgParams params;  // every other parameter at its default
      set_param(params, name, value);
      params.validate();
      const std::vector<RunRecord> records =
          run_cells(cfg.games, params, cfg.runs_per_game, cfg.base_seed, cfg.jobs);
      SweepPoint pt;
      pt.param = name;
      pt.value = value;
      for (const RunRecord& r : records) {
        pt.mean_best += r.best_fitness;
        pt.mean_generations += r.generations;
        pt.mean_time_s += r.wall_time_s;
      }
      const double n = static_cast<double>(records.size());
      pt.mean_best /= n;
      pt.mean_generations /= n;
      pt.mean_time_s /= n;
      points.push_back(std::move(pt));
    }
  }
  return points;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
  std::string out = "param,value,mean_best,mean_generations,mean_time_s\n";
  for (const SweepPoint& p : points) {
    out += p.param;
    out += ',';
    out += format_double(p.value);
    out += ',';
    out += format_double(p.mean_best);
    out += ',';
    out += format_double(p.mean_generations);
    out += ',';
    out += format_double(p.mean_time_s);
    out += '\n';
  }
  return out;
}

std::vector<ScalabilityRow> scalability_suite(const ExperimentConfig& cfg) {
  validate_games(cfg.games);
  if (cfg.runs_per_game < 1) throw ValidationError("bench: runs_per_game must be >= 1");
  struct Acc {
    int games = 0;
    double tree_sum = 0.0;
    double easg_sum = 0.0;
    int oracle_count = 0;
    double oracle_sum = 0.0;
  };
  std::map<int, Acc> groups;
  for (const BenchGame& g : cfg.games) {
    const double prod = g.game->strategy_count(Role::kDefender) *
                        g.game->strategy_count(Role::kAttacker);
    const int decade = static_cast<int>(std::lround(std::log10(prod)));
    Acc& acc = groups[decade];
    ++acc.games;
    acc.tree_sum += prod;

    const std::vector<RunRecord> records =
        run_cells({g}, cfg.params, cfg.runs_per_game, cfg.base_seed, cfg.jobs);
    double mean_time = 0.0;
    for (const RunRecord& r : records) mean_time += r.wall_time_s;
    acc.easg_sum += mean_time / static_cast<double>(records.size());

    const OracleOutcome oracle = solve_info(g, true);
    if (oracle.solved) {
      ++acc.oracle_count;
      acc.oracle_sum += oracle.time_s;
    }
  }
  std::vector<ScalabilityRow> rows;
  for (const auto& [decade, acc] : groups) {
    ScalabilityRow row;
    row.decade = decade;
    row.game_count = acc.games;
    row.tree_size_mean = acc.tree_sum / acc.games;
    row.easg_time_mean_s = acc.easg_sum / acc.games;
    row.has_oracle = acc.oracle_count > 0;
    if (row.has_oracle) row.oracle_time_mean_s = acc.oracle_sum / acc.oracle_count;
    rows.push_back(row);
  }
  return rows;
}

std::string scalability_csv(const std::vector<ScalabilityRow>& rows) {
  std::string out = "decade,game_count,tree_size_mean,easg_time_mean_s,oracle_time_mean_s\n";
  for (const ScalabilityRow& row : rows) {
    out += std::to_string(row.decade);
    out += ',';
    out += std::to_string(row.game_count);
    out += ',';
    out += format_double(row.tree_size_mean);
    out += ',';
    out += format_double(row.easg_time_mean_s);
    out += ',';
    if (row.has_oracle) out += format_double(row.oracle_time_mean_s);
    out += '\n';
  }
  return out;
}

}  // namespace stackevo::bench
