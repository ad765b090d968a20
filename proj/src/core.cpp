#include "trustgame/core.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "trustgame/game.hpp"
#include "trustgame/parallel.hpp"

namespace trustgame {

Allocation core_allocation(const WeightedDigraph& g) {
  Allocation a;
  a.kind = Allocation::Kind::core;
  a.payoffs.assign(static_cast<std::size_t>(g.player_count()), 0.0);
  for (PlayerId i = 0; i < g.player_count(); ++i) {
    double incoming = 0.0;
    for (int e : g.in_edge_ids(i)) incoming += g.edges()[static_cast<std::size_t>(e)].weight;
    a.payoffs[static_cast<std::size_t>(i)] = incoming;
    a.payoff_sum += incoming;
  }
  a.efficient = approx_equal(a.payoff_sum, g.total_weight());
  return a;
}

CoreReport is_in_core(const WeightedDigraph& g, const Allocation& x, double tol,
                      int max_n) {
  int n = g.player_count();
  if (static_cast<int>(x.payoffs.size()) != n)
    throw Error("allocation length does not match player count");
  if (n > max_n)
    throw GuardError("core membership check is exhaustive; refusing n=" +
                     std::to_string(n) + " > guard " + std::to_string(max_n));

  std::vector<double> v = detail::value_table(g);
  std::uint64_t full = (std::uint64_t{1} << n) - 1;

  // x(S) for every mask via low-bit recursion.
  std::vector<double> payoff_of(v.size(), 0.0);
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    int low = std::countr_zero(mask);
    payoff_of[mask] = payoff_of[mask & (mask - 1)] + x.payoffs[static_cast<std::size_t>(low)];
  }

  CoreReport report;
  report.allocation = x;
  report.payoff_sum = payoff_of[full];
  report.grand_value = v[full];
  report.efficiency_ok = std::fabs(report.payoff_sum - report.grand_value) <= tol;
  report.membership_checked = true;

  for (std::uint64_t mask = 1; mask < full; ++mask) {
    ++report.n_checked;
    double deficit = v[mask] - payoff_of[mask];
    if (deficit > tol)
      report.violations.push_back(
          {Coalition::from_mask(mask), v[mask], payoff_of[mask], deficit});
  }

  // Upper-bound characterization c_i = v(N) - v(N \ {i}); matching all of
  // them certifies the allocation as the unique core candidate.
  if (n > 0) {
    bool all_match = true;
    for (int i = 0; i < n; ++i) {
      double c_i = v[full] - v[full ^ (std::uint64_t{1} << i)];
      if (std::fabs(c_i - x.payoffs[static_cast<std::size_t>(i)]) > tol) {
        all_match = false;
        break;
      }
    }
    report.is_unique_checked = all_match;
  }

  if (n >= 2) {
    double lhs = 0.0;
    for (int i = 0; i < n; ++i) lhs += v[full ^ (std::uint64_t{1} << i)];
    report.identity_lhs = lhs / (n - 1);
    report.identity_rhs = v[full];
  }
  return report;
}

CoreReport core_report(const WeightedDigraph& g, double tol, int max_n) {
  return is_in_core(g, core_allocation(g), tol, max_n);
}

std::pair<double, double> verify_core_identity(const WeightedDigraph& g) {
  int n = g.player_count();
  if (n < 2) throw Error("core identity needs at least 2 players");
  Coalition grand = Coalition::full(n);
  double lhs = 0.0;
  for (PlayerId i = 0; i < n; ++i) {
    std::vector<PlayerId> rest;
    rest.reserve(static_cast<std::size_t>(n) - 1);
    for (PlayerId j = 0; j < n; ++j)
      if (j != i) rest.push_back(j);
    lhs += coalition_value(g, Coalition(std::move(rest))).total;
  }
  return {lhs / (n - 1), coalition_value(g, grand).total};
}

Allocation subgame_allocation(const WeightedDigraph& g, const Coalition& s) {
  if (s.empty()) throw Error("subgame allocation needs a nonempty coalition");
  for (PlayerId i : s.members()) g.check_player(i);

  std::vector<char> in_s(static_cast<std::size_t>(g.player_count()), 0);
  for (PlayerId i : s.members()) in_s[static_cast<std::size_t>(i)] = 1;

  Allocation a;
  a.kind = Allocation::Kind::subgame;
  a.payoffs.assign(static_cast<std::size_t>(g.player_count()), 0.0);
  for (PlayerId j : s.members()) {
    double inside = 0.0;
    bool has_outside = false;
    double outside_min = std::numeric_limits<double>::infinity();
    for (int e : g.in_edge_ids(j)) {
      const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
      if (in_s[static_cast<std::size_t>(edge.from)]) {
        inside += edge.weight;
      } else {
        has_outside = true;
        outside_min = std::min(outside_min, edge.weight);
      }
    }
    double payoff = inside + (has_outside ? outside_min : 0.0);
    a.payoffs[static_cast<std::size_t>(j)] = payoff;
    a.payoff_sum += payoff;
  }
  a.efficient = approx_equal(a.payoff_sum, coalition_value(g, s).total);
  return a;
}

TotalBalancednessReport verify_total_balancedness(const WeightedDigraph& g, int max_n) {
  int n = g.player_count();
  if (n > max_n)
    throw GuardError("total balancedness check costs ~3^n pairs; refusing n=" +
                     std::to_string(n) + " > guard " + std::to_string(max_n));

  std::vector<double> v = detail::value_table(g);
  std::uint64_t full = (std::uint64_t{1} << n) - 1;

  TotalBalancednessReport report;
  std::vector<std::uint64_t> counts(detail::kChunkCount, 0);
  std::vector<std::vector<SubgameViolation>> found(detail::kChunkCount);
  detail::for_chunks(full + 1, [&](int chunk, std::uint64_t begin, std::uint64_t end) {
    std::vector<double> xbar(static_cast<std::size_t>(n), 0.0);
    for (std::uint64_t s = begin; s < end; ++s) {
      if (s == 0) continue;
      for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
        PlayerId j = std::countr_zero(rest);
        double inside = 0.0;
        bool has_outside = false;
        double outside_min = std::numeric_limits<double>::infinity();
        for (int e : g.in_edge_ids(j)) {
          const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
          if (s >> edge.from & 1) {
            inside += edge.weight;
          } else {
            has_outside = true;
            outside_min = std::min(outside_min, edge.weight);
          }
        }
        xbar[static_cast<std::size_t>(j)] = inside + (has_outside ? outside_min : 0.0);
      }
      // Core conditions of the subgame on S for its constructive point.
      for (std::uint64_t t = s; t != 0; t = (t - 1) & s) {
        ++counts[static_cast<std::size_t>(chunk)];
        double payoff = 0.0;
        for (std::uint64_t rest = t; rest != 0; rest &= rest - 1)
          payoff += xbar[static_cast<std::size_t>(std::countr_zero(rest))];
        if (!approx_ge(payoff, v[t])) {
          found[static_cast<std::size_t>(chunk)].push_back(
              {Coalition::from_mask(s), Coalition::from_mask(t), v[t], payoff,
               v[t] - payoff});
        }
      }
    }
  });
  for (int c = 0; c < detail::kChunkCount; ++c) {
    report.n_checked += counts[static_cast<std::size_t>(c)];
    for (auto& violation : found[static_cast<std::size_t>(c)])
      report.violations.push_back(std::move(violation));
  }
  return report;
}

}  // namespace trustgame
