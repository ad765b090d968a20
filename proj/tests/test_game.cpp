#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"
#include "trustgame/game.hpp"
#include "trustgame/parallel.hpp"

using namespace trustgame;

TEST_CASE("coalition value") {
  auto g3 = fixtures::g3();

  SUBCASE("singleton with outside in-neighbors") {
    auto b = coalition_value(g3, Coalition{0});
    CHECK(b.internal == 0.0);
    CHECK(b.external == doctest::Approx(0.2));
    CHECK(b.total == doctest::Approx(0.2));
    REQUIRE(b.per_player_external.count(0) == 1);
    CHECK(b.per_player_external.at(0) == doctest::Approx(0.2));
  }

  SUBCASE("pair keeps the other outside neighbor as bottleneck") {
    auto b = coalition_value(g3, Coalition{0, 1});
    CHECK(b.internal == doctest::Approx(0.2));
    CHECK(b.external == doctest::Approx(0.5));
    CHECK(b.total == doctest::Approx(0.7));
  }

  SUBCASE("grand coalition has no external part") {
    auto b = coalition_value(g3, Coalition{0, 1, 2});
    CHECK(b.internal == doctest::Approx(0.7));
    CHECK(b.external == 0.0);
    CHECK(b.total == doctest::Approx(0.7));
    CHECK(b.per_player_external.empty());
  }

  SUBCASE("empty coalition") {
    auto b = coalition_value(g3, Coalition{});
    CHECK(b.internal == 0.0);
    CHECK(b.external == 0.0);
    CHECK(b.total == 0.0);
  }

  SUBCASE("member out of range") {
    CHECK_THROWS_AS(coalition_value(g3, Coalition{5}), std::out_of_range);
  }
}

TEST_CASE("external player value") {
  auto g3 = fixtures::g3();
  CHECK(external_player_value(g3, Coalition{0}, 0) == doctest::Approx(0.2));
  CHECK(external_player_value(g3, Coalition{0, 1, 2}, 0) == 0.0);  // empty-min convention
  CHECK(external_player_value(g3, Coalition{1}, 0) == 0.0);        // not a member

  SUBCASE("matches the per-player breakdown") {
    std::mt19937_64 rng(7201);
    for (int trial = 0; trial < 30; ++trial) {
      auto g = testsupport::random_graph(rng, 6);
      std::uint64_t mask = rng() & 0x3f;
      Coalition s = Coalition::from_mask(mask);
      auto b = coalition_value(g, s);
      for (PlayerId i = 0; i < g.player_count(); ++i) {
        double w = external_player_value(g, s, i);
        auto it = b.per_player_external.find(i);
        double from_breakdown = it == b.per_player_external.end() ? 0.0 : it->second;
        CHECK(w == doctest::Approx(from_breakdown));
      }
    }
  }
}

TEST_CASE("value invariants on random graphs") {
  std::mt19937_64 rng(7202);
  for (int trial = 0; trial < 25; ++trial) {
    auto g = testsupport::random_graph(rng, 6);
    std::uint64_t full = (1u << g.player_count()) - 1;

    // nonnegative everywhere
    for (std::uint64_t mask = 0; mask <= full; ++mask)
      CHECK(detail::coalition_value_mask(g, mask) >= 0.0);

    // singleton = min in-weight or 0
    for (PlayerId i = 0; i < g.player_count(); ++i) {
      double expected = 0.0;
      if (!g.in_edge_ids(i).empty()) {
        expected = 1.0;
        for (int e : g.in_edge_ids(i))
          expected = std::min(expected, g.edges()[e].weight);
      }
      CHECK(coalition_value(g, Coalition{i}).total == doctest::Approx(expected));
    }

    // homogeneity: scaling weights scales v
    double c = 0.37;
    std::vector<Edge> scaled = g.edges();
    for (Edge& e : scaled) e.weight *= c;
    WeightedDigraph gc(g.player_count(), std::move(scaled));
    for (int k = 0; k < 10; ++k) {
      std::uint64_t mask = rng() & full;
      CHECK(detail::coalition_value_mask(gc, mask) ==
            doctest::Approx(c * detail::coalition_value_mask(g, mask)).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero-weight in-edge pins the external minimum") {
  // 2 -> 0 at 0.8; adding 3 -> 0 at exact 0 forces w_0 to zero.
  WeightedDigraph base(4, {{2, 0, 0.8}});
  WeightedDigraph pinned(4, {{2, 0, 0.8}, {3, 0, 0.0}});
  Coalition s{0, 1};
  CHECK(external_player_value(base, s, 0) == doctest::Approx(0.8));
  CHECK(external_player_value(pinned, s, 0) == 0.0);
  CHECK(coalition_value(pinned, s).per_player_external.at(0) == 0.0);
}

TEST_CASE("superadditivity checker") {
  SUBCASE("fixtures pass") {
    CHECK(check_superadditive(fixtures::g3()).passed());
    CHECK(check_superadditive(fixtures::g2()).passed());
    auto report = check_superadditive(fixtures::edgeless(3));
    CHECK(report.passed());
    CHECK(report.claim == "superadditivity");
    CHECK(report.n_checked > 0);
  }

  SUBCASE("guard refuses instead of truncating") {
    std::mt19937_64 rng(7203);
    auto g = testsupport::random_graph(rng, 13);
    CHECK_THROWS_AS(check_superadditive(g), GuardError);
    CHECK_NOTHROW(check_superadditive(g, 13));
  }

  SUBCASE("violation reporting on a crafted non-superadditive table") {
    // v({0}) = v({1}) = 1 but v({0,1}) = 1
    std::vector<double> v = {0.0, 1.0, 1.0, 1.0};
    auto report = detail::check_superadditive_table(2, v);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].s == Coalition{0});
    CHECK(report.violations[0].t == Coalition{1});
    CHECK(report.violations[0].deficit == doctest::Approx(1.0));
    CHECK(report.n_checked == 1);
  }
}

TEST_CASE("monotonicity checker") {
  SUBCASE("fixtures pass") {
    CHECK(check_monotone(fixtures::g3()).passed());
    CHECK(check_monotone(fixtures::gf(0.4)).passed());
    CHECK(check_monotone(fixtures::edgeless(3)).passed());
  }

  SUBCASE("violation reporting on a crafted non-monotone table") {
    // v({0}) = 1 > v({0,1}) = 0.25
    std::vector<double> v = {0.0, 1.0, 0.0, 0.25};
    auto report = detail::check_monotone_table(2, v);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].s == Coalition{0});
    CHECK(report.violations[0].t == Coalition{0, 1});
    CHECK(report.violations[0].deficit == doctest::Approx(0.75));
  }

  SUBCASE("guard") {
    std::mt19937_64 rng(7204);
    auto g = testsupport::random_graph(rng, 13);
    CHECK_THROWS_AS(check_monotone(g), GuardError);
  }
}

TEST_CASE("sampled checkers") {
  std::mt19937_64 rng(7205);
  auto g = testsupport::random_graph(rng, 14);  // above the exhaustive guard

  auto super_a = check_superadditive_sampled(g, 500, 42);
  auto super_b = check_superadditive_sampled(g, 500, 42);
  CHECK(super_a.passed());
  CHECK(super_a.n_checked == 500);
  CHECK(super_b.n_checked == super_a.n_checked);  // same seed, same pairs

  auto mono = check_monotone_sampled(g, 500, 42);
  CHECK(mono.passed());
  CHECK(mono.n_checked == 500);
}

TEST_CASE("exhaustive checks agree across worker counts") {
  std::mt19937_64 rng(7206);
  auto g = testsupport::random_graph(rng, 8);
  set_worker_count(1);
  auto one = check_superadditive(g);
  set_worker_count(4);
  auto four = check_superadditive(g);
  set_worker_count(1);
  CHECK(one.n_checked == four.n_checked);
  CHECK(one.violations.size() == four.violations.size());
}
