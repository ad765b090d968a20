#include "trustgame/values.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "trustgame/game.hpp"
#include "trustgame/parallel.hpp"

namespace trustgame {

const char* allocation_kind_name(Allocation::Kind kind) {
  switch (kind) {
    case Allocation::Kind::shapley: return "shapley";
    case Allocation::Kind::banzhaf: return "banzhaf";
    case Allocation::Kind::core: return "core";
    case Allocation::Kind::subgame: return "subgame";
  }
  return "?";
}

namespace {

// All in-neighbor profiles plus the rank of every edge within its head's
// profile, built in one O(E log E) pass.
struct ProfileSet {
  std::vector<InNeighborProfile> profiles;
  std::vector<int> edge_rank;  // 1-based

  explicit ProfileSet(const WeightedDigraph& g) {
    int n = g.player_count();
    profiles.resize(static_cast<std::size_t>(n));
    edge_rank.assign(static_cast<std::size_t>(g.edge_count()), 0);
    for (PlayerId j = 0; j < n; ++j) {
      std::vector<int> order = g.in_edge_ids(j);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Edge& ea = g.edges()[static_cast<std::size_t>(a)];
        const Edge& eb = g.edges()[static_cast<std::size_t>(b)];
        return std::pair(ea.weight, ea.from) < std::pair(eb.weight, eb.from);
      });
      InNeighborProfile& profile = profiles[static_cast<std::size_t>(j)];
      profile.owner = j;
      profile.ordered.reserve(order.size());
      for (std::size_t t = 0; t < order.size(); ++t) {
        const Edge& e = g.edges()[static_cast<std::size_t>(order[t])];
        profile.ordered.push_back({e.from, e.weight});
        edge_rank[static_cast<std::size_t>(order[t])] = static_cast<int>(t) + 1;
      }
    }
  }
};

double chain_correction(const InNeighborProfile& profile, ValueKind kind) {
  int m = profile.m();
  if (m == 0) return 0.0;
  double top = profile.weight_at_rank(m);
  return kind == ValueKind::shapley ? top / (m + 1) : std::ldexp(top, -m);
}

Allocation closed_form(const WeightedDigraph& g, ValueKind kind) {
  int n = g.player_count();
  ProfileSet ps(g);

  std::vector<std::vector<double>> suffix(static_cast<std::size_t>(n));
  std::vector<double> correction(static_cast<std::size_t>(n), 0.0);
  for (PlayerId j = 0; j < n; ++j) {
    suffix[static_cast<std::size_t>(j)] =
        tail_suffix_sums(ps.profiles[static_cast<std::size_t>(j)], kind);
    correction[static_cast<std::size_t>(j)] =
        chain_correction(ps.profiles[static_cast<std::size_t>(j)], kind);
  }
  // Tail of j's chain past rank r, including the final correction.
  auto chain_from_rank = [&](PlayerId j, int r) {
    return suffix[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] -
           correction[static_cast<std::size_t>(j)];
  };

  Allocation a;
  a.kind = kind == ValueKind::shapley ? Allocation::Kind::shapley
                                      : Allocation::Kind::banzhaf;
  a.payoffs.assign(static_cast<std::size_t>(n), 0.0);
  for (PlayerId i = 0; i < n; ++i) {
    double incident = 0.0;
    for (int e : g.out_edge_ids(i)) incident += g.edges()[static_cast<std::size_t>(e)].weight;
    for (int e : g.in_edge_ids(i)) incident += g.edges()[static_cast<std::size_t>(e)].weight;
    double payoff = 0.5 * incident;

    if (ps.profiles[static_cast<std::size_t>(i)].m() > 0) payoff += chain_from_rank(i, 0);
    for (int e : g.out_edge_ids(i)) {
      const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
      payoff += chain_from_rank(edge.to, ps.edge_rank[static_cast<std::size_t>(e)]);
    }
    a.payoffs[static_cast<std::size_t>(i)] = payoff;
    a.payoff_sum += payoff;
  }
  a.efficient = approx_equal(a.payoff_sum, g.total_weight());
  return a;
}

void require_brute_guard(const char* what, int n, int max_n) {
  if (n > max_n)
    throw GuardError(std::string(what) + " enumerates 2^n coalitions; refusing n=" +
                     std::to_string(n) + " > guard " + std::to_string(max_n));
}

// Mean/weighted marginal contributions over all subsets avoiding the
// player. weight_of_size[s] is the weight of a subset of size s.
std::vector<double> marginal_contribution_sums(
    int n, const std::function<double(std::uint64_t)>& value,
    const std::vector<double>& weight_of_size) {
  if (n > detail::kHardEnumerationCap)
    throw GuardError("definitional solver: n=" + std::to_string(n) +
                     " exceeds the hard enumeration cap of " +
                     std::to_string(detail::kHardEnumerationCap));
  if (n == 0) return {};

  std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> table(count, 0.0);
  detail::for_chunks(count, [&](int, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t mask = begin; mask < end; ++mask) table[mask] = value(mask);
  });

  std::vector<std::vector<double>> partial(
      detail::kChunkCount, std::vector<double>(static_cast<std::size_t>(n), 0.0));
  detail::for_chunks(count, [&](int chunk, std::uint64_t begin, std::uint64_t end) {
    auto& p = partial[static_cast<std::size_t>(chunk)];
    for (std::uint64_t mask = begin; mask < end; ++mask) {
      double w = weight_of_size[static_cast<std::size_t>(std::popcount(mask))];
      for (int i = 0; i < n; ++i) {
        if (mask >> i & 1) continue;
        p[static_cast<std::size_t>(i)] +=
            w * (table[mask | (std::uint64_t{1} << i)] - table[mask]);
      }
    }
  });

  std::vector<double> payoffs(static_cast<std::size_t>(n), 0.0);
  for (int c = 0; c < detail::kChunkCount; ++c)
    for (int i = 0; i < n; ++i)
      payoffs[static_cast<std::size_t>(i)] += partial[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)];
  return payoffs;
}

Allocation wrap_bruteforce(const WeightedDigraph& g, std::vector<double> payoffs,
                           Allocation::Kind kind) {
  Allocation a;
  a.kind = kind;
  a.payoffs = std::move(payoffs);
  for (double p : a.payoffs) a.payoff_sum += p;
  a.efficient = approx_equal(a.payoff_sum, g.total_weight());
  return a;
}

}  // namespace

Allocation shapley_closed_form(const WeightedDigraph& g) {
  return closed_form(g, ValueKind::shapley);
}

Allocation banzhaf_closed_form(const WeightedDigraph& g) {
  return closed_form(g, ValueKind::banzhaf);
}

std::vector<double> shapley_of_game(int n,
                                    const std::function<double(std::uint64_t)>& value) {
  // Subset weight |S|! (n-|S|-1)! / n! written as 1 / (n * C(n-1, |S|));
  // exact in double for every n this can enumerate.
  std::vector<double> weight(static_cast<std::size_t>(n) + 1, 0.0);
  double binom = 1.0;  // C(n-1, s)
  for (int s = 0; s < n; ++s) {
    weight[static_cast<std::size_t>(s)] = 1.0 / (n * binom);
    binom = binom * (n - 1 - s) / (s + 1);
  }
  return marginal_contribution_sums(n, value, weight);
}

std::vector<double> banzhaf_of_game(int n,
                                    const std::function<double(std::uint64_t)>& value) {
  std::vector<double> weight(static_cast<std::size_t>(n) + 1,
                             n > 0 ? std::ldexp(1.0, -(n - 1)) : 0.0);
  return marginal_contribution_sums(n, value, weight);
}

Allocation shapley_bruteforce(const WeightedDigraph& g, int max_n) {
  require_brute_guard("brute-force Shapley", g.player_count(), max_n);
  auto payoffs = shapley_of_game(
      g.player_count(),
      [&](std::uint64_t mask) { return detail::coalition_value_mask(g, mask); });
  return wrap_bruteforce(g, std::move(payoffs), Allocation::Kind::shapley);
}

Allocation banzhaf_bruteforce(const WeightedDigraph& g, int max_n) {
  require_brute_guard("brute-force Banzhaf", g.player_count(), max_n);
  auto payoffs = banzhaf_of_game(
      g.player_count(),
      [&](std::uint64_t mask) { return detail::coalition_value_mask(g, mask); });
  return wrap_bruteforce(g, std::move(payoffs), Allocation::Kind::banzhaf);
}

namespace {

MarginalEffectReport marginal_effect(const WeightedDigraph& g, PlayerId from,
                                     PlayerId to, PlayerId target, ValueKind kind) {
  g.check_player(target);
  auto eid = g.find_edge(from, to);
  if (!eid) throw Error("no edge " + g.label(from) + " -> " + g.label(to));

  InNeighborProfile head = in_neighbor_profile(g, to);
  int r = head.rank_of(from);
  int m = head.m();
  double w = g.edges()[static_cast<std::size_t>(*eid)].weight;

  MarginalEffectReport report;
  report.edge_from = from;
  report.edge_to = to;
  report.target = target;
  report.method = kind;
  report.rank_used = r;
  report.valid_epsilon_window.lo = r > 1 ? head.weight_at_rank(r - 1) - w : -w;
  report.valid_epsilon_window.hi = r < m ? head.weight_at_rank(r + 1) - w : 1.0 - w;

  bool shapley = kind == ValueKind::shapley;
  // Slope of a chain tail in its rank-r weight; applies to the head's own
  // chain and to lower-ranked co-in-neighbors alike.
  double gain = shapley ? 1.0 / (static_cast<double>(r) * (r + 1)) : std::ldexp(1.0, -r);

  if (target == to) {
    report.internal_coeff = 0.5;
    report.external_coeff = gain;
  } else if (target == from) {
    report.internal_coeff = 0.5;
    report.external_coeff = shapley ? -1.0 / (r + 1) : -std::ldexp(1.0, -r);
  } else if (g.find_edge(target, to) && head.rank_of(target) < r) {
    report.external_coeff = gain;
  }
  report.total_coeff = report.internal_coeff + report.external_coeff;
  return report;
}

}  // namespace

MarginalEffectReport marginal_effect_shapley(const WeightedDigraph& g, PlayerId from,
                                             PlayerId to, PlayerId target) {
  return marginal_effect(g, from, to, target, ValueKind::shapley);
}

MarginalEffectReport marginal_effect_banzhaf(const WeightedDigraph& g, PlayerId from,
                                             PlayerId to, PlayerId target) {
  return marginal_effect(g, from, to, target, ValueKind::banzhaf);
}

SweepTable sweep_edge(const WeightedDigraph& g, PlayerId from, PlayerId to,
                      std::vector<PlayerId> targets, std::vector<double> grid,
                      ValueKind method) {
  auto eid = g.find_edge(from, to);
  if (!eid) throw Error("no edge " + g.label(from) + " -> " + g.label(to));
  if (targets.empty()) throw Error("sweep needs at least one target");
  for (PlayerId t : targets) g.check_player(t);
  for (double w : grid)
    if (!(w >= 0.0 && w <= 1.0)) throw Error("sweep grid value outside [0, 1]");

  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  SweepTable table;
  table.edge_from = from;
  table.edge_to = to;
  table.method = method;
  table.targets = std::move(targets);
  table.grid = std::move(grid);

  // The head's other in-edge weights: exact tie locations, and the
  // breakpoints of the piecewise-linear response where they fall inside
  // the open unit interval.
  std::vector<double> tie_weights;
  for (int e : g.in_edge_ids(to)) {
    if (e == *eid) continue;
    tie_weights.push_back(g.edges()[static_cast<std::size_t>(e)].weight);
  }
  std::sort(tie_weights.begin(), tie_weights.end());
  tie_weights.erase(std::unique(tie_weights.begin(), tie_weights.end()), tie_weights.end());
  for (double w : tie_weights)
    if (w > 0.0 && w < 1.0) table.breakpoints.push_back(w);

  table.values.assign(table.targets.size(), std::vector<double>(table.grid.size(), 0.0));
  table.tie_ambiguous.assign(table.grid.size(), 0);
  for (std::size_t k = 0; k < table.grid.size(); ++k) {
    double w = table.grid[k];
    WeightedDigraph swept = g.with_edge_weight(from, to, w);
    Allocation a = method == ValueKind::shapley ? shapley_closed_form(swept)
                                                : banzhaf_closed_form(swept);
    for (std::size_t t = 0; t < table.targets.size(); ++t)
      table.values[t][k] = a.payoffs[static_cast<std::size_t>(table.targets[t])];
    table.tie_ambiguous[k] =
        std::binary_search(tie_weights.begin(), tie_weights.end(), w) ? 1 : 0;
  }

  // Fit one line per segment between consecutive breakpoints from the
  // usable grid points (ties excluded; ranks are constant in between, so
  // any residual is pure floating-point noise).
  std::vector<double> bounds;
  bounds.push_back(0.0);
  bounds.insert(bounds.end(), table.breakpoints.begin(), table.breakpoints.end());
  bounds.push_back(1.0);
  for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
    SweepTable::Segment segment;
    segment.lo = bounds[b];
    segment.hi = bounds[b + 1];
    std::vector<std::size_t> usable;
    for (std::size_t k = 0; k < table.grid.size(); ++k) {
      double w = table.grid[k];
      if (w < segment.lo || w > segment.hi || table.tie_ambiguous[k]) continue;
      usable.push_back(k);
    }
    double nan = std::numeric_limits<double>::quiet_NaN();
    segment.slopes.assign(table.targets.size(), nan);
    segment.max_residuals.assign(table.targets.size(), nan);
    if (usable.size() >= 2) {
      std::size_t first = usable.front();
      std::size_t last = usable.back();
      double dw = table.grid[last] - table.grid[first];
      for (std::size_t t = 0; t < table.targets.size(); ++t) {
        double slope = (table.values[t][last] - table.values[t][first]) / dw;
        double residual = 0.0;
        for (std::size_t k : usable) {
          double fitted = table.values[t][first] + slope * (table.grid[k] - table.grid[first]);
          residual = std::max(residual, std::fabs(table.values[t][k] - fitted));
        }
        segment.slopes[t] = slope;
        segment.max_residuals[t] = residual;
      }
    }
    table.segments.push_back(std::move(segment));
  }
  return table;
}

bool is_zero_shapley_player(const WeightedDigraph& g, PlayerId i) {
  g.check_player(i);
  for (int e : g.in_edge_ids(i))
    if (g.edges()[static_cast<std::size_t>(e)].weight != 0.0) return false;
  for (int e : g.out_edge_ids(i)) {
    PlayerId k = g.edges()[static_cast<std::size_t>(e)].to;
    const auto& in_k = g.in_edge_ids(k);
    if (in_k.size() == 1) continue;  // i is k's only in-neighbor
    bool all_zero = true;
    for (int e2 : in_k)
      if (g.edges()[static_cast<std::size_t>(e2)].weight != 0.0) {
        all_zero = false;
        break;
      }
    if (!all_zero) return false;
  }
  return true;
}

}  // namespace trustgame
