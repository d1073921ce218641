#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "stackevo/fig.hpp"
#include "stackevo/format.hpp"
#include "stackevo/oracle.hpp"
#include "stackevo/response.hpp"
#include "stackevo/whg.hpp"
#include "support/builders.hpp"
#include "support/matrix_game.hpp"

using namespace stackevo;
using namespace stackevo::testing;

namespace {

/// Independent SSE check for two-row matrices: scan the defender mix on a
/// fine grid, re-deriving the tie-broken response at every point.
double grid_sse_two_rows(const oracle::PayoffMatrices& m, int steps) {
  double best = -1e300;
  for (int u = 0; u <= steps; ++u) {
    const double x0 = static_cast<double>(u) / steps;
    const double x1 = 1.0 - x0;
    double best_att = -1e300;
    double def_at_best = -1e300;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double att = x0 * m.attacker[0][j] + x1 * m.attacker[1][j];
      const double def = x0 * m.defender[0][j] + x1 * m.defender[1][j];
      if (att > best_att + 1e-9) {
        best_att = att;
        def_at_best = def;
      } else if (att > best_att - 1e-9 && def > def_at_best) {
        def_at_best = def;
      }
    }
    best = std::max(best, def_at_best);
  }
  return best;
}

}  // namespace

TEST_CASE("matrices of a one-by-one game equal the single simulate outcome") {
  const MatrixGame g({{0.75}}, {{-0.25}});
  const oracle::PayoffMatrices m = oracle::build_matrices(g);
  REQUIRE(m.rows() == 1);
  REQUIRE(m.cols() == 1);
  CHECK(m.defender[0][0] == 0.75);
  CHECK(m.attacker[0][0] == -0.25);
  CHECK(m.defender_space.size() == 1);
  CHECK(m.attacker_space.size() == 1);
}

TEST_CASE("matrix rows reproduce expected payoffs of the pure mixtures") {
  const whg::WarehouseGame g(chain_whg_data(4, 3));
  const oracle::PayoffMatrices m = oracle::build_matrices(g);
  REQUIRE(m.rows() == g.strategies(Role::kDefender).size());
  REQUIRE(m.cols() == g.strategies(Role::kAttacker).size());
  for (std::size_t i = 0; i < m.rows(); i += 7) {
    const Chromosome pure = pure_chromosome(m.defender_space.strategies[i]);
    for (std::size_t j = 0; j < m.cols(); j += 5) {
      const PayoffPair p = expected_payoffs(pure, m.attacker_space.strategies[j], g);
      CHECK(p.defender == m.defender[i][j]);
      CHECK(p.attacker == m.attacker[i][j]);
    }
  }
}

TEST_CASE("random matrix entries match direct simulation") {
  Rng rng(7);
  const whg::WarehouseGame g = whg::WarehouseGame::generate(6, 3, rng);
  const oracle::PayoffMatrices m = oracle::build_matrices(g);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t i = uniform_index(rng, m.rows());
    const std::size_t j = uniform_index(rng, m.cols());
    const PayoffPair p =
        g.simulate(m.defender_space.strategies[i], m.attacker_space.strategies[j]);
    CHECK(p.defender == m.defender[i][j]);
    CHECK(p.attacker == m.attacker[i][j]);
  }
}

TEST_CASE("capacity overruns surface as capacity errors") {
  const whg::WarehouseGame g(complete_graph_data(8, 9));
  CHECK_THROWS_AS(oracle::build_matrices(g), CapacityError);
  const oracle::SseSolution s = oracle::solve_game(g);
  CHECK(s.status == oracle::SseStatus::kCapacityExceeded);
  CHECK(s.defender_mixed.entries.empty());
}

TEST_CASE("a lone attacker column reduces to the best defender row") {
  const MatrixGame g({{0.2}, {0.9}, {0.4}}, {{0.0}, {0.0}, {0.0}});
  const oracle::SseSolution s = oracle::solve_game(g);
  REQUIRE(s.status == oracle::SseStatus::kOptimal);
  CHECK(s.value == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(s.response_index == 0);
  REQUIRE(s.defender_mixed.length() == 1);
  CHECK(s.defender_mixed.entries[0].strategy.code == std::vector<std::int32_t>{1});
}

TEST_CASE("the two-by-two reference game solves to one half") {
  const MatrixGame g({{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 1.0}, {1.0, 0.0}});
  const oracle::PayoffMatrices m = oracle::build_matrices(g);
  const oracle::SseSolution s = oracle::solve_sse(m);
  REQUIRE(s.status == oracle::SseStatus::kOptimal);
  CHECK(s.value == doctest::Approx(0.5).epsilon(1e-6));
  // The fine grid over defender mixes lands on the same optimum.
  CHECK(grid_sse_two_rows(m, 2000) == doctest::Approx(s.value).epsilon(1e-3));
  // Column 1 attains it: x = (1/2, 1/2) makes the attacker indifferent and
  // the tie goes the defender's way.
  CHECK(s.response_index == 0);
  REQUIRE(s.defender_mixed.length() == 2);
  CHECK(s.defender_mixed.entries[0].probability == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("random two-row games agree with the grid scan") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::vector<double>> d(2, std::vector<double>(3));
    std::vector<std::vector<double>> a(2, std::vector<double>(3));
    for (auto* mat : {&d, &a}) {
      for (auto& row : *mat) {
        for (auto& v : row) v = quantize9(uniform_real(rng, -1.0, 1.0));
      }
    }
    const MatrixGame g(d, a);
    const oracle::PayoffMatrices m = oracle::build_matrices(g);
    const oracle::SseSolution s = oracle::solve_sse(m);
    REQUIRE(s.status == oracle::SseStatus::kOptimal);
    const double grid = grid_sse_two_rows(m, 4000);
    // The grid response switches discretely, so allow its resolution error.
    CHECK(s.value >= grid - 1e-6);
    CHECK(s.value <= grid + 2e-3);
  }
}

TEST_CASE("the solution dominates evaluated chromosomes and matches best_response") {
  Rng rng(13);
  const whg::WarehouseGame g = whg::WarehouseGame::generate(5, 2, rng);
  const oracle::SseSolution s = oracle::solve_game(g);
  REQUIRE(s.status == oracle::SseStatus::kOptimal);

  const BestResponseResult br = best_response(s.defender_mixed, g);
  CHECK(br.response.code == s.attacker_response.code);
  CHECK(br.defender_eu == doctest::Approx(s.value).epsilon(1e-9));

  for (int trial = 0; trial < 10000; ++trial) {
    const int len = 1 + static_cast<int>(uniform_index(rng, 4));
    Chromosome c;
    double total = 0.0;
    for (int i = 0; i < len; ++i) {
      const double w = uniform_real(rng, 0.01, 1.0);
      c.entries.push_back({g.random_pure_strategy(Role::kDefender, rng), w});
      total += w;
    }
    for (auto& e : c.entries) e.probability /= total;
    c = coalesce_and_normalize(c);
    CHECK(evaluate_fitness(c, g) <= s.value + 1e-6);
  }
}

TEST_CASE("fig solutions dominate sampled chromosomes too") {
  Rng rng(17);
  const fig::FlipItGame g = fig::FlipItGame::generate("chain", 3, rng);
  const oracle::SseSolution s = oracle::solve_game(g);
  REQUIRE(s.status == oracle::SseStatus::kOptimal);
  const BestResponseResult br = best_response(s.defender_mixed, g);
  CHECK(br.response.code == s.attacker_response.code);
  CHECK(br.defender_eu == doctest::Approx(s.value).epsilon(1e-9));
  for (int trial = 0; trial < 2000; ++trial) {
    Chromosome c = pure_chromosome(g.random_pure_strategy(Role::kDefender, rng));
    CHECK(evaluate_fitness(c, g) <= s.value + 1e-6);
  }
}

TEST_CASE("equal-value columns resolve to the lowest index") {
  const MatrixGame g({{0.5, 0.5}, {0.5, 0.5}}, {{0.0, 0.0}, {0.0, 0.0}});
  const oracle::SseSolution s = oracle::solve_game(g);
  REQUIRE(s.status == oracle::SseStatus::kOptimal);
  CHECK(s.value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(s.response_index == 0);
}

TEST_CASE("solving is deterministic") {
  Rng rng(19);
  const whg::WarehouseGame g = whg::WarehouseGame::generate(6, 2, rng);
  const oracle::SseSolution s1 = oracle::solve_game(g);
  const oracle::SseSolution s2 = oracle::solve_game(g);
  REQUIRE(s1.status == oracle::SseStatus::kOptimal);
  CHECK(s1.value == s2.value);
  CHECK(s1.response_index == s2.response_index);
  REQUIRE(s1.defender_mixed.length() == s2.defender_mixed.length());
  for (int i = 0; i < s1.defender_mixed.length(); ++i) {
    CHECK(s1.defender_mixed.entries[i].probability ==
          s2.defender_mixed.entries[i].probability);
    CHECK(s1.defender_mixed.entries[i].strategy.code ==
          s2.defender_mixed.entries[i].strategy.code);
  }
}

TEST_CASE("mixed weights are cleaned and sum to one") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const whg::WarehouseGame g = whg::WarehouseGame::generate(5, 2, rng);
    const oracle::SseSolution s = oracle::solve_game(g);
    REQUIRE(s.status == oracle::SseStatus::kOptimal);
    double total = 0.0;
    for (const auto& e : s.defender_mixed.entries) {
      CHECK(e.probability >= 1e-9);
      total += e.probability;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_NOTHROW(validate_chromosome_shape(s.defender_mixed));
  }
}

TEST_CASE("payoff extrema scan the defender matrix") {
  SUBCASE("constant matrix is degenerate") {
    const MatrixGame g({{0.4, 0.4}, {0.4, 0.4}}, {{0.0, 0.1}, {0.2, 0.3}});
    const auto [lo, hi] = oracle::defender_payoff_extrema(oracle::build_matrices(g));
    CHECK(lo == 0.4);
    CHECK(hi == 0.4);
    CHECK_THROWS_AS(fig::normalize_defender_payoff(0.4, lo, hi), ValidationError);
  }
  SUBCASE("hand matrix") {
    const MatrixGame g({{1.0, -2.0}, {3.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}});
    const auto [lo, hi] = oracle::defender_payoff_extrema(oracle::build_matrices(g));
    CHECK(lo == -2.0);
    CHECK(hi == 3.0);
  }
  SUBCASE("fig instance matches an exhaustive profile scan") {
    Rng rng(29);
    const fig::FlipItGame g = fig::FlipItGame::generate("tree", 3, rng);
    const oracle::PayoffMatrices m = oracle::build_matrices(g);
    const auto [lo, hi] = oracle::defender_payoff_extrema(m);
    double scan_lo = 1e300;
    double scan_hi = -1e300;
    for (const auto& ds : g.strategies(Role::kDefender).strategies) {
      for (const auto& as : g.strategies(Role::kAttacker).strategies) {
        const double v = g.simulate(ds, as).defender;
        scan_lo = std::min(scan_lo, v);
        scan_hi = std::max(scan_hi, v);
      }
    }
    CHECK(lo == scan_lo);
    CHECK(hi == scan_hi);
    CHECK(lo < hi);
  }
}
