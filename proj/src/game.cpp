#include "trustgame/game.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>

#include "trustgame/parallel.hpp"

namespace trustgame {

namespace {

void check_members(const WeightedDigraph& g, const Coalition& s) {
  for (PlayerId i : s.members()) g.check_player(i);
}

void require_guard(const char* what, int n, int max_n) {
  if (n > max_n)
    throw GuardError(std::string(what) + " is exhaustive; refusing n=" +
                     std::to_string(n) + " > guard " + std::to_string(max_n));
  if (n > detail::kHardEnumerationCap)
    throw GuardError(std::string(what) + ": n=" + std::to_string(n) +
                     " exceeds the hard enumeration cap of " +
                     std::to_string(detail::kHardEnumerationCap));
}

}  // namespace

ValueBreakdown coalition_value(const WeightedDigraph& g, const Coalition& s) {
  check_members(g, s);
  ValueBreakdown out;
  std::vector<char> in_s(static_cast<std::size_t>(g.player_count()), 0);
  for (PlayerId i : s.members()) in_s[static_cast<std::size_t>(i)] = 1;

  for (const Edge& e : g.edges())
    if (in_s[static_cast<std::size_t>(e.from)] && in_s[static_cast<std::size_t>(e.to)])
      out.internal += e.weight;

  for (PlayerId i : s.members()) {
    bool has_outside = false;
    double min_weight = std::numeric_limits<double>::infinity();
    for (int e : g.in_edge_ids(i)) {
      const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
      if (!in_s[static_cast<std::size_t>(edge.from)]) {
        has_outside = true;
        min_weight = std::min(min_weight, edge.weight);
      }
    }
    if (has_outside) {
      out.per_player_external[i] = min_weight;
      out.external += min_weight;
    }
  }
  out.total = out.internal + out.external;
  return out;
}

double external_player_value(const WeightedDigraph& g, const Coalition& s, PlayerId i) {
  g.check_player(i);
  if (!s.contains(i)) return 0.0;
  bool has_outside = false;
  double min_weight = std::numeric_limits<double>::infinity();
  for (int e : g.in_edge_ids(i)) {
    const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
    if (!s.contains(edge.from)) {
      has_outside = true;
      min_weight = std::min(min_weight, edge.weight);
    }
  }
  return has_outside ? min_weight : 0.0;
}

namespace detail {

double coalition_value_mask(const WeightedDigraph& g, std::uint64_t mask) {
  double internal = 0.0;
  for (const Edge& e : g.edges())
    if ((mask >> e.from & 1) && (mask >> e.to & 1)) internal += e.weight;

  double external = 0.0;
  for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
    PlayerId i = std::countr_zero(rest);
    bool has_outside = false;
    double min_weight = std::numeric_limits<double>::infinity();
    for (int e : g.in_edge_ids(i)) {
      const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
      if (!(mask >> edge.from & 1)) {
        has_outside = true;
        min_weight = std::min(min_weight, edge.weight);
      }
    }
    if (has_outside) external += min_weight;
  }
  return internal + external;
}

std::vector<double> value_table(const WeightedDigraph& g) {
  int n = g.player_count();
  if (n > kHardEnumerationCap)
    throw GuardError("value table: n=" + std::to_string(n) +
                     " exceeds the hard enumeration cap of " +
                     std::to_string(kHardEnumerationCap));
  std::vector<double> table(std::uint64_t{1} << n, 0.0);
  for_chunks(table.size(), [&](int, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t mask = begin; mask < end; ++mask)
      table[mask] = coalition_value_mask(g, mask);
  });
  return table;
}

CheckReport check_superadditive_table(int n, const std::vector<double>& v) {
  CheckReport report;
  report.claim = "superadditivity";
  std::uint64_t full = (std::uint64_t{1} << n) - 1;

  std::vector<std::uint64_t> counts(kChunkCount, 0);
  std::vector<std::vector<PairViolation>> found(kChunkCount);
  for_chunks(full + 1, [&](int chunk, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t s = begin; s < end; ++s) {
      if (s == 0) continue;
      std::uint64_t comp = full & ~s;
      for (std::uint64_t t = comp; t != 0; t = (t - 1) & comp) {
        if (t <= s) continue;  // each unordered pair once
        ++counts[static_cast<std::size_t>(chunk)];
        double lhs = v[s | t];
        double rhs = v[s] + v[t];
        if (!approx_ge(lhs, rhs)) {
          PairViolation pv;
          pv.s = Coalition::from_mask(s);
          pv.t = Coalition::from_mask(t);
          pv.v_s = v[s];
          pv.v_t = v[t];
          pv.v_union = lhs;
          pv.deficit = rhs - lhs;
          found[static_cast<std::size_t>(chunk)].push_back(std::move(pv));
        }
      }
    }
  });
  for (int c = 0; c < kChunkCount; ++c) {
    report.n_checked += counts[static_cast<std::size_t>(c)];
    for (auto& pv : found[static_cast<std::size_t>(c)])
      report.violations.push_back(std::move(pv));
  }
  return report;
}

CheckReport check_monotone_table(int n, const std::vector<double>& v) {
  CheckReport report;
  report.claim = "monotonicity";
  std::uint64_t full = (std::uint64_t{1} << n) - 1;

  std::vector<std::uint64_t> counts(kChunkCount, 0);
  std::vector<std::vector<PairViolation>> found(kChunkCount);
  for_chunks(full + 1, [&](int chunk, std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t t = begin; t < end; ++t) {
      for (std::uint64_t s = (t - 1) & t; s != 0; s = (s - 1) & t) {
        ++counts[static_cast<std::size_t>(chunk)];
        if (!approx_ge(v[t], v[s])) {
          PairViolation pv;
          pv.s = Coalition::from_mask(s);
          pv.t = Coalition::from_mask(t);
          pv.v_s = v[s];
          pv.v_t = v[t];
          pv.deficit = v[s] - v[t];
          found[static_cast<std::size_t>(chunk)].push_back(std::move(pv));
        }
      }
    }
  });
  for (int c = 0; c < kChunkCount; ++c) {
    report.n_checked += counts[static_cast<std::size_t>(c)];
    for (auto& pv : found[static_cast<std::size_t>(c)])
      report.violations.push_back(std::move(pv));
  }
  return report;
}

}  // namespace detail

CheckReport check_superadditive(const WeightedDigraph& g, int max_n) {
  require_guard("superadditivity check", g.player_count(), max_n);
  return detail::check_superadditive_table(g.player_count(), detail::value_table(g));
}

CheckReport check_monotone(const WeightedDigraph& g, int max_n) {
  require_guard("monotonicity check", g.player_count(), max_n);
  return detail::check_monotone_table(g.player_count(), detail::value_table(g));
}

namespace {

void sort_violations(std::vector<PairViolation>& violations) {
  std::sort(violations.begin(), violations.end(),
            [](const PairViolation& a, const PairViolation& b) {
              if (a.s != b.s) return a.s < b.s;
              return a.t < b.t;
            });
}

}  // namespace

CheckReport check_superadditive_sampled(const WeightedDigraph& g, int samples,
                                        std::uint64_t seed) {
  int n = g.player_count();
  if (n > 63) throw GuardError("sampled checks support at most 63 players");
  CheckReport report;
  report.claim = "superadditivity";
  if (n < 2 || samples <= 0) return report;

  std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    std::uint64_t s = 0;
    do s = rng() & full;
    while (s == 0 || s == full);
    std::uint64_t comp = full & ~s;
    std::uint64_t t = 0;
    do t = rng() & comp;
    while (t == 0);

    ++report.n_checked;
    double v_s = detail::coalition_value_mask(g, s);
    double v_t = detail::coalition_value_mask(g, t);
    double v_union = detail::coalition_value_mask(g, s | t);
    if (!approx_ge(v_union, v_s + v_t)) {
      PairViolation pv;
      pv.s = Coalition::from_mask(s);
      pv.t = Coalition::from_mask(t);
      pv.v_s = v_s;
      pv.v_t = v_t;
      pv.v_union = v_union;
      pv.deficit = v_s + v_t - v_union;
      report.violations.push_back(std::move(pv));
    }
  }
  sort_violations(report.violations);
  return report;
}

CheckReport check_monotone_sampled(const WeightedDigraph& g, int samples,
                                   std::uint64_t seed) {
  int n = g.player_count();
  if (n > 63) throw GuardError("sampled checks support at most 63 players");
  CheckReport report;
  report.claim = "monotonicity";
  if (n < 1 || samples <= 0) return report;

  std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    std::uint64_t t = 0;
    do t = rng() & full;
    while (t == 0);
    std::uint64_t s = rng() & t;

    ++report.n_checked;
    double v_s = detail::coalition_value_mask(g, s);
    double v_t = detail::coalition_value_mask(g, t);
    if (!approx_ge(v_t, v_s)) {
      PairViolation pv;
      pv.s = Coalition::from_mask(s);
      pv.t = Coalition::from_mask(t);
      pv.v_s = v_s;
      pv.v_t = v_t;
      pv.deficit = v_s - v_t;
      report.violations.push_back(std::move(pv));
    }
  }
  sort_violations(report.violations);
  return report;
}

}  // namespace trustgame
