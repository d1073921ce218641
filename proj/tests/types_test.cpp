#include <doctest.h>

#include <vector>

#include "stackevo/types.hpp"

using namespace stackevo;

namespace {

PureStrategy ps(std::vector<std::int32_t> code) { return PureStrategy{std::move(code)}; }

Chromosome make(std::vector<std::pair<std::vector<std::int32_t>, double>> raw) {
  Chromosome c;
  for (auto& [code, p] : raw) c.entries.push_back({ps(std::move(code)), p});
  return c;
}

}  // namespace

TEST_CASE("coalesce merges duplicates into the first occurrence") {
  const Chromosome c = make({{{1}, 0.5}, {{2}, 0.25}, {{1}, 0.25}});
  const Chromosome out = coalesce_and_normalize(c);
  REQUIRE(out.entries.size() == 2);
  CHECK(out.entries[0].strategy == ps({1}));
  CHECK(out.entries[0].probability == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(out.entries[1].strategy == ps({2}));
  CHECK(out.entries[1].probability == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("coalesce rescales weights to sum to one") {
  const Chromosome out = coalesce_and_normalize(make({{{1}, 0.2}, {{2}, 0.2}}));
  REQUIRE(out.entries.size() == 2);
  CHECK(out.entries[0].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out.entries[1].probability == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("coalesce drops entries whose merged weight is zero") {
  const Chromosome out = coalesce_and_normalize(make({{{1}, 0.0}, {{2}, 1.0}}));
  REQUIRE(out.entries.size() == 1);
  CHECK(out.entries[0].strategy == ps({2}));
  CHECK(out.entries[0].probability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("coalesce rejects degenerate inputs") {
  CHECK_THROWS_AS(coalesce_and_normalize(Chromosome{}), ValidationError);
  CHECK_THROWS_AS(coalesce_and_normalize(make({{{1}, -0.5}, {{2}, 1.5}})), ValidationError);
  CHECK_THROWS_AS(coalesce_and_normalize(make({{{1}, 0.0}, {{2}, 0.0}})), ValidationError);
}

TEST_CASE("coalesce is idempotent on already clean chromosomes") {
  const Chromosome c = make({{{3, 1}, 0.25}, {{1, 2}, 0.5}, {{2, 2}, 0.25}});
  const Chromosome once = coalesce_and_normalize(c);
  const Chromosome twice = coalesce_and_normalize(once);
  REQUIRE(once.entries.size() == twice.entries.size());
  for (std::size_t i = 0; i < once.entries.size(); ++i) {
    CHECK(once.entries[i].strategy == twice.entries[i].strategy);
    CHECK(once.entries[i].probability == twice.entries[i].probability);
  }
}

TEST_CASE("validate_chromosome_shape accepts normalized chromosomes") {
  CHECK_NOTHROW(validate_chromosome_shape(make({{{1}, 0.5}, {{2}, 0.5}})));
  CHECK_NOTHROW(validate_chromosome_shape(make({{{7}, 1.0}})));
}

TEST_CASE("validate_chromosome_shape rejects invariant violations") {
  CHECK_THROWS_AS(validate_chromosome_shape(make({{{1}, 0.5}, {{2}, 0.4}})), ValidationError);
  CHECK_THROWS_AS(validate_chromosome_shape(make({{{1}, 1.5}, {{2}, -0.5}})), ValidationError);
  CHECK_THROWS_AS(validate_chromosome_shape(make({{{1}, 0.5}, {{1}, 0.5}})), ValidationError);
  CHECK_THROWS_AS(validate_chromosome_shape(Chromosome{}), ValidationError);
}

TEST_CASE("chromosome_key is invariant under entry permutation") {
  const Chromosome a = make({{{1, 2}, 0.25}, {{2, 1}, 0.75}});
  const Chromosome b = make({{{2, 1}, 0.75}, {{1, 2}, 0.25}});
  CHECK(chromosome_key(a) == chromosome_key(b));
}

TEST_CASE("chromosome_key distinguishes different mixtures") {
  const Chromosome a = make({{{1, 2}, 0.25}, {{2, 1}, 0.75}});
  const Chromosome b = make({{{1, 2}, 0.75}, {{2, 1}, 0.25}});
  const Chromosome c = make({{{1, 2}, 0.25}, {{2, 2}, 0.75}});
  CHECK(chromosome_key(a) != chromosome_key(b));
  CHECK(chromosome_key(a) != chromosome_key(c));
}

TEST_CASE("pure_chromosome wraps a strategy with probability one") {
  const Chromosome c = pure_chromosome(ps({4, 5, 6}));
  REQUIRE(c.entries.size() == 1);
  CHECK(c.entries[0].strategy == ps({4, 5, 6}));
  CHECK(c.entries[0].probability == 1.0);
}
