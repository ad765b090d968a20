#pragma once

#include <map>
#include <vector>

#include "trustgame/coalition.hpp"
#include "trustgame/graph.hpp"

namespace trustgame {

// One unanimity-game component: `coefficient` credited to every coalition
// containing `support`.
struct UnanimityTerm {
  Coalition support;
  double coefficient = 0.0;
};

// The unanimity representation of the game: raw terms preserve the chain
// structure (internal pair terms plus one chain per player), `aggregated`
// sums coefficients by support. Pair supports can coincide with chain
// supports, so only the aggregated map is comparable with the exhaustive
// inversion oracle.
struct GameDecomposition {
  std::vector<UnanimityTerm> terms;
  std::map<Coalition, double> aggregated;

  // Harsanyi dividend of a support set; 0 when no term touches it.
  double dividend(const Coalition& support) const {
    auto it = aggregated.find(support);
    return it == aggregated.end() ? 0.0 : it->second;
  }
};

// Unanimity terms of player i's external bottleneck game: increments
// (w(t) - w(t-1)) on the chain sets T(t) for t = 1..m, and a correction
// -w(m) on T(m+1) that zeroes the game once every in-neighbor has joined.
// Empty when i has no in-neighbors.
std::vector<UnanimityTerm> external_chain_terms(const WeightedDigraph& g, PlayerId i);

// Pair term ({i,j}, a_ij) for every edge, plus all external chains.
GameDecomposition full_decomposition(const WeightedDigraph& g);

// Sum of dividends over supports contained in S; reconstructs v(S).
double evaluate_decomposition(const GameDecomposition& d, const Coalition& s);

// Exact dividends of v by exhaustive Möbius inversion over all 2^n
// coalitions; the independent cross-check for full_decomposition.
std::map<Coalition, double> mobius_oracle(const WeightedDigraph& g, int max_n = 16);

}  // namespace trustgame
