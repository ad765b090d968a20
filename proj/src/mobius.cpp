#include "trustgame/mobius.hpp"

#include "trustgame/game.hpp"

namespace trustgame {

std::vector<UnanimityTerm> external_chain_terms(const WeightedDigraph& g, PlayerId i) {
  InNeighborProfile profile = in_neighbor_profile(g, i);
  int m = profile.m();
  std::vector<UnanimityTerm> terms;
  if (m == 0) return terms;

  terms.reserve(static_cast<std::size_t>(m) + 1);
  Coalition support{i};
  for (int t = 1; t <= m; ++t) {
    double increment = profile.weight_at_rank(t) - profile.weight_at_rank(t - 1);
    terms.push_back({support, increment});
    support = support.with(profile.ordered[static_cast<std::size_t>(t - 1)].neighbor);
  }
  terms.push_back({support, -profile.weight_at_rank(m)});
  return terms;
}

GameDecomposition full_decomposition(const WeightedDigraph& g) {
  GameDecomposition d;
  for (const Edge& e : g.edges())
    d.terms.push_back({Coalition{e.from, e.to}, e.weight});
  for (PlayerId i = 0; i < g.player_count(); ++i) {
    auto chain = external_chain_terms(g, i);
    d.terms.insert(d.terms.end(), chain.begin(), chain.end());
  }
  for (const UnanimityTerm& term : d.terms)
    d.aggregated[term.support] += term.coefficient;
  return d;
}

double evaluate_decomposition(const GameDecomposition& d, const Coalition& s) {
  double value = 0.0;
  for (const auto& [support, coefficient] : d.aggregated)
    if (s.contains_all(support)) value += coefficient;
  return value;
}

std::map<Coalition, double> mobius_oracle(const WeightedDigraph& g, int max_n) {
  int n = g.player_count();
  if (n > max_n)
    throw GuardError("Möbius inversion is exhaustive; refusing n=" +
                     std::to_string(n) + " > guard " + std::to_string(max_n));
  std::vector<double> f = detail::value_table(g);

  // In-place subset Möbius inversion: after pass b, f[mask] holds the
  // alternating sum over the b low bits.
  for (int b = 0; b < n; ++b) {
    std::uint64_t bit = std::uint64_t{1} << b;
    for (std::uint64_t mask = 0; mask < f.size(); ++mask)
      if (mask & bit) f[mask] -= f[mask ^ bit];
  }

  std::map<Coalition, double> dividends;
  for (std::uint64_t mask = 1; mask < f.size(); ++mask)
    dividends.emplace(Coalition::from_mask(mask), f[mask]);
  return dividends;
}

}  // namespace trustgame
