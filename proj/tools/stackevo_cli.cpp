#include <algorithm>
#include <csignal>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "stackevo/bench.hpp"
#include "stackevo/engine.hpp"
#include "stackevo/fig.hpp"
#include "stackevo/format.hpp"
#include "stackevo/instance_io.hpp"
#include "stackevo/oracle.hpp"
#include "stackevo/rng.hpp"
#include "stackevo/seg.hpp"
#include "stackevo/whg.hpp"

namespace {

namespace fs = std::filesystem;
using namespace stackevo;

volatile std::sig_atomic_t g_interrupted = 0;

void on_sigint(int) { g_interrupted = 1; }

int usage_error(const std::string& message) {
  std::cerr << "usage error: " << message << '\n';
  return 1;
}

/// Mixed-strategy JSON fragment: [{"probability":p,"code":[...]},...]
std::string strategy_json(const Chromosome& c) {
  std::string out = "[";
  bool first = true;
  for (const ChromosomeEntry& e : c.entries) {
    if (!first) out += ',';
    first = false;
    out += "{\"probability\":";
    out += format_double(e.probability);
    out += ",\"code\":[";
    for (std::size_t i = 0; i < e.strategy.code.size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(e.strategy.code[i]);
    }
    out += "]}";
  }
  out += ']';
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out.good()) throw ValidationError("cli: cannot open \"" + path + "\" for writing");
  out << text;
  out.flush();
  if (!out.good()) throw ValidationError("cli: failed writing \"" + path + "\"");
}

/// Shared EASG parameter flags; defaults are the recommended table values.
struct ParamFlags {
  easg::EasgParams params;

  void attach(CLI::App* cmd) {
    cmd->add_option("--p-size", params.p_size, "Population size");
    cmd->add_option("--max-gen", params.n_g, "Hard generation limit");
    cmd->add_option("--stall-gen", params.n_c, "Generations without improvement before stopping");
    cmd->add_option("--p-m", params.p_m, "Per-individual mutation probability");
    cmd->add_option("--p-c", params.p_c, "Fraction of the population entering crossover");
    cmd->add_option("--p-s", params.p_s, "Tournament selection pressure");
    cmd->add_option("--elite", params.elite, "Unconditionally promoted top individuals");
  }

  /// Parameter domain problems are flag misuse, not instance problems.
  bool valid_or_report() const {
    try {
      params.validate();
      return true;
    } catch (const ValidationError& e) {
      usage_error(e.what());
      return false;
    }
  }
};

int cmd_generate(const std::string& type, std::string preset, bool preset_given, int size,
                 bool size_given, int steps, std::uint64_t seed, const std::string& out) {
  if (type != "whg" && type != "seg" && type != "fig") {
    return usage_error("unknown --type \"" + type + "\" (expected whg, seg or fig)");
  }
  Rng rng(seed);
  if (type == "whg") {
    if (preset_given) return usage_error("--preset applies to seg and fig only");
    io::save_game_file(whg::WarehouseGame::generate(size, steps, rng), out);
  } else {
    if (size_given) return usage_error("--size applies to whg only");
    const auto& names = type == "seg" ? seg::SearchGame::preset_names()
                                      : fig::FlipItGame::preset_names();
    if (!preset_given) preset = names.front();
    if (std::find(names.begin(), names.end(), preset) == names.end()) {
      std::string known;
      for (const std::string& n : names) known += (known.empty() ? "" : ", ") + n;
      return usage_error("unknown --preset \"" + preset + "\" (expected " + known + ")");
    }
    if (type == "seg") {
      io::save_game_file(seg::SearchGame::generate(preset, steps, rng), out);
    } else {
      io::save_game_file(fig::FlipItGame::generate(preset, steps, rng), out);
    }
  }
  std::cout << "type=" << type << " steps=" << steps << " seed=" << seed << " out=" << out
            << '\n';
  return 0;
}

int cmd_solve(const std::string& file, const ParamFlags& flags, std::uint64_t seed,
              const std::string& out) {
  if (!flags.valid_or_report()) return 1;
  const auto game = io::load_game_file(file);

  std::signal(SIGINT, on_sigint);
  easg::RunOptions options;
  options.cancelled = [] { return g_interrupted != 0; };
  const easg::RunResult res = easg::run(*game, flags.params, seed, options);

  std::string text = "{\"best_fitness\":";
  text += format_double(res.best_fitness);
  text += ",\"seed\":" + std::to_string(seed);
  text += ",\"generations\":" + std::to_string(res.generations_run);
  text += ",\"interrupted\":";
  text += res.interrupted ? "true" : "false";
  text += ",\"strategy\":" + strategy_json(res.best) + "}\n";
  write_text_file(out, text);

  std::cout << "best=" << format_double(res.best_fitness) << " generations="
            << res.generations_run << " interrupted=" << (res.interrupted ? "true" : "false")
            << " out=" << out << '\n';
  return 0;
}

int cmd_exact(const std::string& file, const std::string& out) {
  const auto game = io::load_game_file(file);
  const oracle::PayoffMatrices m = oracle::build_matrices(*game);
  const oracle::SseSolution sol = oracle::solve_sse(m);

  std::string text = "{\"sse_value\":";
  text += format_double(sol.value);
  text += ",\"response_index\":" + std::to_string(sol.response_index);
  text += ",\"defender_strategy\":" + strategy_json(sol.defender_mixed);
  text += ",\"attacker_response\":[";
  for (std::size_t i = 0; i < sol.attacker_response.code.size(); ++i) {
    if (i > 0) text += ',';
    text += std::to_string(sol.attacker_response.code[i]);
  }
  text += "]}\n";
  write_text_file(out, text);

  std::cout << "sse=" << format_double(sol.value) << " support="
            << sol.defender_mixed.entries.size() << " response_index=" << sol.response_index
            << " out=" << out << '\n';
  return 0;
}

int cmd_bench(const std::string& config_file, int jobs, bool scalability) {
  bench::ExperimentConfig cfg = bench::load_config_file(config_file);
  if (cfg.games.empty()) return usage_error("config lists no games");
  if (cfg.output_dir.empty()) return usage_error("config sets no output_dir");
  cfg.jobs = jobs;

  if (scalability) {
    const auto rows = bench::scalability_suite(cfg);
    const fs::path out = fs::path(cfg.output_dir) / "scalability.csv";
    fs::create_directories(cfg.output_dir);
    write_text_file(out.string(), bench::scalability_csv(rows));
    std::cout << "decades=" << rows.size() << " out=" << out.string() << '\n';
  } else if (!cfg.sweep.empty()) {
    const auto points = bench::parameter_sweep(cfg);
    const fs::path out = fs::path(cfg.output_dir) / "sweep.csv";
    fs::create_directories(cfg.output_dir);
    write_text_file(out.string(), bench::sweep_csv(points));
    std::cout << "sweep_points=" << points.size() << " out=" << out.string() << '\n';
  } else {
    const bench::ExperimentReport rep = bench::run_experiment(cfg);
    std::cout << "games=" << rep.rows.size() << " runs=" << rep.runs_total << " out="
              << (fs::path(cfg.output_dir) / "report.csv").string() << '\n';
  }
  return 0;
}

int cmd_compare(const std::string& file, std::string id, const ParamFlags& flags,
                std::uint64_t base_seed, int run_index) {
  if (!flags.valid_or_report()) return 1;
  const auto game = io::load_game_file(file);
  if (id.empty()) id = fs::path(file).stem().string();

  const oracle::PayoffMatrices m = oracle::build_matrices(*game);
  const oracle::SseSolution sol = oracle::solve_sse(m);
  const auto [lo, hi] = oracle::defender_payoff_extrema(m);

  const std::uint64_t seed =
      derive_seed(base_seed, id, static_cast<std::uint64_t>(run_index));
  const easg::RunResult res = easg::run(*game, flags.params, seed);

  // Mirrors the benchmark report: raw payoff gap, except fig which is scored
  // on the normalized [-1, 1] payoff scale.
  const double sse = quantize9(sol.value);
  const double best = quantize9(res.best_fitness);
  const double span = quantize9(hi) - quantize9(lo);
  const double norm = span > 0.0 ? 2.0 / span : 0.0;
  const double column = game->type_name() == "fig" ? norm : 1.0;
  const double gap = column * (sse - best);

  std::cout << "game=" << id << " type=" << game->type_name() << " seed=" << seed
            << " sse=" << format_double(sse) << " best=" << format_double(best)
            << " gap=" << format_double(gap) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver suite for sequential Stackelberg security games"};
  app.require_subcommand(1);

  const int processors = std::max(1u, std::thread::hardware_concurrency());

  // generate
  std::string gen_type, gen_preset, gen_out;
  int gen_size = 8, gen_steps = 3;
  std::uint64_t gen_seed = 1;
  CLI::App* gen = app.add_subcommand("generate", "Write a random game instance");
  gen->add_option("--type", gen_type, "Game type: whg, seg or fig")->required();
  gen->add_option("--size", gen_size, "Vertex count (whg only)")->check(CLI::Range(2, 100000));
  gen->add_option("--preset", gen_preset,
                  "Layout preset (seg/fig only; defaults to the smallest)");
  gen->add_option("--steps", gen_steps, "Game length in steps/rounds")
      ->check(CLI::Range(1, 1000));
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Instance file to write")->required();

  // solve
  std::string solve_file, solve_out;
  std::uint64_t solve_seed = 1;
  ParamFlags solve_params;
  CLI::App* solve = app.add_subcommand("solve", "Run the evolutionary solver on an instance");
  solve->add_option("file", solve_file, "Game instance file")->required();
  solve->add_option("--seed", solve_seed, "Run seed");
  solve->add_option("--out", solve_out, "Run result file to write")->required();
  solve_params.attach(solve);

  // exact
  std::string exact_file, exact_out;
  CLI::App* exact = app.add_subcommand("exact", "Compute the exact SSE of an instance");
  exact->add_option("file", exact_file, "Game instance file")->required();
  exact->add_option("--out", exact_out, "Solution file to write")->required();

  // bench
  std::string bench_config;
  int bench_jobs = processors;
  bool bench_scalability = false;
  CLI::App* benchc = app.add_subcommand("bench", "Run a benchmark config");
  benchc->add_option("config", bench_config, "Experiment config file (JSON)")->required();
  benchc->add_option("--jobs", bench_jobs, "Parallel (game, run) cells")
      ->check(CLI::Range(1, 4096));
  benchc->add_flag("--scalability", bench_scalability,
                   "Group by strategy-space decade and time solvers instead of the "
                   "standard report (sweep configs otherwise produce sweep.csv only)");

  // compare
  std::string cmp_file, cmp_id;
  std::uint64_t cmp_seed = 1;
  int cmp_run = 0;
  ParamFlags cmp_params;
  CLI::App* cmp =
      app.add_subcommand("compare", "One-line evolutionary-vs-exact gap for an instance");
  cmp->add_option("file", cmp_file, "Game instance file")->required();
  cmp->add_option("--id", cmp_id, "Game id used for seed derivation (default: file stem)");
  cmp->add_option("--seed", cmp_seed, "Base seed (combined with id and run index)");
  cmp->add_option("--run", cmp_run, "Run index")->check(CLI::Range(0, 1000000));
  cmp_params.attach(cmp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(gen_type, gen_preset, gen->count("--preset") > 0, gen_size,
                          gen->count("--size") > 0, gen_steps, gen_seed, gen_out);
    }
    if (solve->parsed()) return cmd_solve(solve_file, solve_params, solve_seed, solve_out);
    if (exact->parsed()) return cmd_exact(exact_file, exact_out);
    if (benchc->parsed()) return cmd_bench(bench_config, bench_jobs, bench_scalability);
    if (cmp->parsed()) return cmd_compare(cmp_file, cmp_id, cmp_params, cmp_seed, cmp_run);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;
  }
  return 70;
}
