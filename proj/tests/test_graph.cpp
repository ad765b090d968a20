#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "support/fixtures.hpp"
#include "support/random_graphs.hpp"
#include "trustgame/graph.hpp"

using namespace trustgame;

TEST_CASE("edge list parsing") {
  SUBCASE("single edge") {
    auto g = parse_graph("1 2 0.6", GraphFormat::edge_list);
    CHECK(g.player_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.edges()[0].weight == doctest::Approx(0.6));
    CHECK(g.label(0) == "1");
    CHECK(g.label(1) == "2");
  }

  SUBCASE("comments and blank lines") {
    auto g = parse_graph("# header\n\n2 1 0.2  # trailing comment\n3 1 0.5\n",
                         GraphFormat::edge_list);
    CHECK(g.player_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.total_weight() == doctest::Approx(0.7));
  }

  SUBCASE("labels are arbitrary strings in first-appearance order") {
    auto g = parse_graph("alice bob 0.25\ncarol alice 1", GraphFormat::edge_list);
    CHECK(g.labels() == std::vector<std::string>{"alice", "bob", "carol"});
    CHECK(g.find_player("carol") == PlayerId{2});
    CHECK(!g.find_player("dave").has_value());
  }

  SUBCASE("self-loop is rejected with its line") {
    try {
      parse_graph("1 2 0.5\n1 1 0.3", GraphFormat::edge_list);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("self-loop") != std::string::npos);
    }
  }

  SUBCASE("weight outside unit interval") {
    CHECK_THROWS_AS(parse_graph("1 2 1.5", GraphFormat::edge_list), ParseError);
    CHECK_THROWS_AS(parse_graph("1 2 -0.1", GraphFormat::edge_list), ParseError);
    CHECK_THROWS_AS(parse_graph("1 2 nan", GraphFormat::edge_list), ParseError);
  }

  SUBCASE("malformed lines") {
    CHECK_THROWS_AS(parse_graph("1 2", GraphFormat::edge_list), ParseError);
    CHECK_THROWS_AS(parse_graph("1 2 0.5 extra", GraphFormat::edge_list), ParseError);
    CHECK_THROWS_AS(parse_graph("1 2 zero", GraphFormat::edge_list), ParseError);
  }

  SUBCASE("duplicate ordered pair is rejected, reverse edge is fine") {
    CHECK_THROWS_AS(parse_graph("1 2 0.5\n1 2 0.5", GraphFormat::edge_list), ParseError);
    CHECK_NOTHROW(parse_graph("1 2 0.5\n2 1 0.5", GraphFormat::edge_list));
  }

  SUBCASE("zero-weight edges are kept") {
    auto g = parse_graph("1 2 0", GraphFormat::edge_list);
    CHECK(g.edge_count() == 1);
    CHECK(g.edges()[0].weight == 0.0);
  }
}

TEST_CASE("json parsing") {
  SUBCASE("nodes array fixes the label universe and allows isolated players") {
    auto g = parse_graph(R"({"nodes": ["a", "b", "c"], "edges": [["a", "b", 0.5]]})",
                         GraphFormat::json);
    CHECK(g.player_count() == 3);
    CHECK(g.in_edge_ids(2).empty());
    CHECK(g.out_edge_ids(2).empty());
  }

  SUBCASE("indices resolve against the nodes array") {
    auto g = parse_graph(R"({"nodes": ["a", "b"], "edges": [[0, 1, 0.25]]})",
                         GraphFormat::json);
    CHECK(g.edges()[0].from == 0);
    CHECK(g.edges()[0].to == 1);
  }

  SUBCASE("bare integers without nodes are labels") {
    auto g = parse_graph(R"({"edges": [[1, 2, 0.6]]})", GraphFormat::json);
    CHECK(g.labels() == std::vector<std::string>{"1", "2"});
  }

  SUBCASE("errors carry a locus") {
    CHECK_THROWS_AS(parse_graph("[1,2]", GraphFormat::json), ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"edges": [["a", "a", 0.1]]})", GraphFormat::json),
                    ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"edges": [["a", "b", 2]]})", GraphFormat::json),
                    ParseError);
    CHECK_THROWS_AS(
        parse_graph(R"({"nodes": ["a"], "edges": [["a", "b", 0.1]]})", GraphFormat::json),
        ParseError);
    CHECK_THROWS_AS(parse_graph(R"({"edges": [["a", "b", 0.1], ["a", "b", 0.2]]})",
                                GraphFormat::json),
                    ParseError);
    CHECK_THROWS_AS(parse_graph("{not json", GraphFormat::json), ParseError);
  }
}

TEST_CASE("in-neighbor profiles") {
  auto g3 = fixtures::g3();

  SUBCASE("sorted with ranks") {
    auto profile = in_neighbor_profile(g3, 0);
    REQUIRE(profile.m() == 2);
    CHECK(profile.ordered[0].neighbor == 1);
    CHECK(profile.ordered[0].weight == doctest::Approx(0.2));
    CHECK(profile.ordered[1].neighbor == 2);
    CHECK(profile.ordered[1].weight == doctest::Approx(0.5));
    CHECK(profile.rank_of(1) == 1);
    CHECK(profile.rank_of(2) == 2);
    CHECK(profile.rank_of(0) == 0);  // not an in-neighbor
    CHECK(profile.weight_at_rank(0) == 0.0);
    CHECK(profile.weight_at_rank(2) == doctest::Approx(0.5));
  }

  SUBCASE("no in-edges gives an empty profile") {
    auto profile = in_neighbor_profile(g3, 1);
    CHECK(profile.m() == 0);
  }

  SUBCASE("equal weights tie-break by ascending player id") {
    // players 2, 4, 7 exist among ids 0..7; both edges into 7 weigh 0.5
    WeightedDigraph g(8, {{4, 7, 0.5}, {2, 7, 0.5}});
    auto profile = in_neighbor_profile(g, 7);
    REQUIRE(profile.m() == 2);
    CHECK(profile.ordered[0].neighbor == 2);
    CHECK(profile.ordered[1].neighbor == 4);
  }

  SUBCASE("profile is invariant under input edge order") {
    std::mt19937_64 rng(7101);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = testsupport::random_tied_graph(rng, 6);
      std::vector<Edge> shuffled = g.edges();
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      WeightedDigraph permuted(g.player_count(), std::move(shuffled));
      for (PlayerId i = 0; i < g.player_count(); ++i) {
        auto a = in_neighbor_profile(g, i);
        auto b = in_neighbor_profile(permuted, i);
        REQUIRE(a.m() == b.m());
        for (int t = 0; t < a.m(); ++t) {
          CHECK(a.ordered[t].neighbor == b.ordered[t].neighbor);
          CHECK(a.ordered[t].weight == b.ordered[t].weight);
        }
      }
    }
  }

  SUBCASE("unknown player") {
    CHECK_THROWS_AS(in_neighbor_profile(g3, 3), std::out_of_range);
  }
}

TEST_CASE("chain supports") {
  auto g3 = fixtures::g3();

  SUBCASE("player with two in-neighbors") {
    auto chain = chain_supports(in_neighbor_profile(g3, 0));
    REQUIRE(chain.size() == 3);
    CHECK(chain[0] == Coalition{0});
    CHECK(chain[1] == Coalition{0, 1});
    CHECK(chain[2] == Coalition{0, 1, 2});
  }

  SUBCASE("no in-neighbors gives only the singleton") {
    auto chain = chain_supports(in_neighbor_profile(g3, 1));
    REQUIRE(chain.size() == 1);
    CHECK(chain[0] == Coalition{1});
  }

  SUBCASE("two players") {
    auto chain = chain_supports(in_neighbor_profile(fixtures::g2(), 1));
    REQUIRE(chain.size() == 2);
    CHECK(chain[0] == Coalition{1});
    CHECK(chain[1] == Coalition{0, 1});
  }

  SUBCASE("sizes 1..m+1, all contain the owner, inclusion chain") {
    std::mt19937_64 rng(7102);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = testsupport::random_graph(rng, 7);
      for (PlayerId i = 0; i < g.player_count(); ++i) {
        auto profile = in_neighbor_profile(g, i);
        auto chain = chain_supports(profile);
        REQUIRE(static_cast<int>(chain.size()) == profile.m() + 1);
        for (std::size_t t = 0; t < chain.size(); ++t) {
          CHECK(chain[t].size() == static_cast<int>(t) + 1);
          CHECK(chain[t].contains(i));
          if (t > 0) CHECK(chain[t].contains_all(chain[t - 1]));
        }
      }
    }
  }
}

TEST_CASE("tail suffix sums") {
  auto profile = in_neighbor_profile(fixtures::g3(), 0);

  SUBCASE("frozen values") {
    auto shapley = tail_suffix_sums(profile, ValueKind::shapley);
    REQUIRE(shapley.size() == 3);
    CHECK(shapley[0] == doctest::Approx(0.2 / 1 + 0.3 / 2));
    CHECK(shapley[1] == doctest::Approx(0.15));
    CHECK(shapley[2] == 0.0);

    auto banzhaf = tail_suffix_sums(profile, ValueKind::banzhaf);
    CHECK(banzhaf[0] == doctest::Approx(0.2 / 1.0 + 0.3 / 2.0));
    CHECK(banzhaf[1] == doctest::Approx(0.15));
    CHECK(banzhaf[2] == 0.0);
  }

  SUBCASE("last entry zero, nonincreasing in r") {
    std::mt19937_64 rng(7103);
    for (int trial = 0; trial < 20; ++trial) {
      auto g = testsupport::random_graph(rng, 8);
      for (PlayerId i = 0; i < g.player_count(); ++i) {
        for (ValueKind kind : {ValueKind::shapley, ValueKind::banzhaf}) {
          auto sums = tail_suffix_sums(in_neighbor_profile(g, i), kind);
          CHECK(sums.back() == 0.0);
          for (std::size_t r = 1; r < sums.size(); ++r)
            CHECK(sums[r - 1] >= sums[r] - 1e-15);
        }
      }
    }
  }
}

TEST_CASE("single-edge reweighting") {
  auto g = fixtures::g3();
  auto g2 = g.with_edge_weight(1, 0, 0.9);
  CHECK(g2.edges()[0].weight == doctest::Approx(0.9));
  CHECK(g.edges()[0].weight == doctest::Approx(0.2));  // original untouched
  CHECK(g2.total_weight() == doctest::Approx(1.4));
  CHECK_THROWS_AS(g.with_edge_weight(0, 1, 0.5), Error);   // absent edge
  CHECK_THROWS_AS(g.with_edge_weight(1, 0, 1.5), Error);   // bad weight
}

TEST_CASE("graph constructor validation") {
  CHECK_THROWS_AS(WeightedDigraph(2, {{0, 0, 0.5}}), Error);
  CHECK_THROWS_AS(WeightedDigraph(2, {{0, 1, 0.5}, {0, 1, 0.6}}), Error);
  CHECK_THROWS_AS(WeightedDigraph(2, {{0, 2, 0.5}}), Error);
  CHECK_THROWS_AS(WeightedDigraph(2, {{0, 1, -0.5}}), Error);
  CHECK_THROWS_AS(WeightedDigraph(2, {}, {"a"}), Error);
  CHECK_THROWS_AS(WeightedDigraph(2, {}, {"a", "a"}), Error);
}
