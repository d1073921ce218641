#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stackevo/engine.hpp"
#include "stackevo/game.hpp"

namespace stackevo::bench {

/// A game instance paired with the identifier used in logs, file names and
/// per-run seed derivation.
struct BenchGame {
  std::string id;
  std::shared_ptr<const GameModel> game;
};

/// Full experiment description. `load_config` fills it from the JSON config
/// format; tests and tools may also build it directly.
struct ExperimentConfig {
  std::vector<BenchGame> games;
  easg::EasgParams params;
  /// Swept parameter name -> values, in declaration order. Used only by
  /// parameter_sweep; all other parameters stay at their defaults there.
  std::vector<std::pair<std::string, std::vector<double>>> sweep;
  int runs_per_game = 30;
  std::uint64_t base_seed = 1;
  bool compute_exact = false;
  std::string output_dir;  ///< empty: keep everything in memory
  int jobs = 1;            ///< concurrently executed (game, run) cells
};

/// One evolutionary run, as persisted to runs.jsonl. All floating values are
/// rounded to 9 significant digits on creation so that statistics computed
/// from memory and from re-parsed logs are bit-identical.
struct RunRecord {
  std::string game_id;
  int run = 0;
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  int generations = 0;
  double wall_time_s = 0.0;
  std::vector<easg::GenerationStats> history;
};

/// Per-game metadata plus the oracle outcome, as persisted to games.json.
/// has_sse is false when the exact solve was skipped or hit the capacity cap.
struct GameInfo {
  std::string id;
  std::string type;
  int steps = 0;
  bool has_sse = false;
  double sse_value = 0.0;
  double payoff_lo = 0.0;
  double payoff_hi = 0.0;
};

struct ReportRow {
  std::string game_id;
  int steps = 0;
  std::string type;
  bool has_sse = false;
  double sse_value = 0.0;
  double best = 0.0;
  double mean = 0.0;
  double stddev = 0.0;   ///< sample standard deviation of per-run best fitness
  double gap_mean = 0.0; ///< mean of sse - best; normalized payoffs for fig
  double gap_max = 0.0;
  double frac_optimal = 0.0;  ///< runs whose gap is within kOptimalTol
  double gen_median = 0.0;
  int gen_max = 0;
  double time_mean_s = 0.0;
};

/// Gap histogram bin edges on the normalized payoff scale; the first bin
/// holds exact hits (gap <= kOptimalTol), the last everything past 0.05.
inline constexpr std::array<double, 3> kGapBinEdges = {0.005, 0.02, 0.05};
/// Generation-count histogram bin edges (inclusive upper bounds).
inline constexpr std::array<int, 4> kGenBinEdges = {25, 50, 100, 250};

inline constexpr double kOptimalTol = 1e-6;

struct ExperimentReport {
  std::vector<ReportRow> rows;
  std::array<std::int64_t, 5> gap_hist{};  ///< normalized-gap bins, see kGapBinEdges
  std::array<std::int64_t, 5> gen_hist{};  ///< generation bins, see kGenBinEdges
  std::int64_t runs_total = 0;
  std::int64_t runs_with_gap = 0;  ///< runs of games with an sse value
};

/// Parses the JSON experiment config; "file" game paths resolve relative to
/// base_dir when given. Generator entries are materialized immediately.
ExperimentConfig load_config(const std::string& text, const std::string& base_dir = "");
ExperimentConfig load_config_file(const std::string& path);

/// Runs every game for runs_per_game derived seeds, optionally solves each
/// game exactly, aggregates the report and, when output_dir is set, persists
/// games/<id>.json, games.json, runs.jsonl and report.csv.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Rebuilds the report purely from games.json + runs.jsonl in output_dir;
/// byte-identical to the report written by the original run.
ExperimentReport report_from_logs(const std::string& output_dir);

std::string report_csv(const ExperimentReport& report);

struct SweepPoint {
  std::string param;
  double value = 0.0;
  double mean_best = 0.0;
  double mean_generations = 0.0;
  double mean_time_s = 0.0;
};

/// For each swept value: all games x runs_per_game with every other
/// parameter at its default, averaging fitness, generations and wall time.
std::vector<SweepPoint> parameter_sweep(const ExperimentConfig& cfg);
std::string sweep_csv(const std::vector<SweepPoint>& points);

struct ScalabilityRow {
  int decade = 0;  ///< round(log10 |defender space| * |attacker space|)
  int game_count = 0;
  double tree_size_mean = 0.0;
  double easg_time_mean_s = 0.0;
  bool has_oracle = false;  ///< at least one group member solved exactly
  double oracle_time_mean_s = 0.0;
};

/// Groups cfg.games by strategy-space decade and averages evolutionary and
/// exact-solve wall time per group (oracle only where it fits the cap).
std::vector<ScalabilityRow> scalability_suite(const ExperimentConfig& cfg);
std::string scalability_csv(const std::vector<ScalabilityRow>& rows);

}  // namespace stackevo::bench
