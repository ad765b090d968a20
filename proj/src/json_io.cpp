#include "trustgame/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace trustgame {

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x == 0.0 ? 0.0 : x;  // normalizes -0
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string format_real(double x, int digits) {
  if (x == 0.0) return "0";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

namespace {

ojson jnum(double x) { return round_sig(x); }

ojson jnum_or_null(double x) {
  if (std::isnan(x)) return nullptr;
  return jnum(x);
}

}  // namespace

ojson coalition_to_json(const Coalition& s, const WeightedDigraph& g) {
  ojson arr = ojson::array();
  for (PlayerId i : s.members()) arr.push_back(g.label(i));
  return arr;
}

std::string coalition_key(const Coalition& s, const WeightedDigraph& g) {
  std::string key;
  for (PlayerId i : s.members()) {
    if (!key.empty()) key += ',';
    key += g.label(i);
  }
  return key;
}

ojson to_json(const ValueBreakdown& b, const Coalition& s, const WeightedDigraph& g) {
  ojson out;
  out["coalition"] = coalition_to_json(s, g);
  out["internal"] = jnum(b.internal);
  out["external"] = jnum(b.external);
  out["total"] = jnum(b.total);
  ojson per = ojson::object();
  for (const auto& [player, w] : b.per_player_external) per[g.label(player)] = jnum(w);
  out["per_player_external"] = std::move(per);
  return out;
}

ojson to_json(const Allocation& a, const WeightedDigraph& g) {
  ojson out;
  out["method"] = allocation_kind_name(a.kind);
  out["labels"] = g.labels();
  ojson payoffs = ojson::array();
  for (double p : a.payoffs) payoffs.push_back(jnum(p));
  out["payoffs"] = std::move(payoffs);
  out["sum"] = jnum(a.payoff_sum);
  out["efficient"] = a.efficient;
  return out;
}

ojson to_json(const CheckReport& r, const WeightedDigraph& g) {
  ojson out;
  out["claim"] = r.claim;
  out["n_checked"] = r.n_checked;
  ojson violations = ojson::array();
  bool superadditive = r.claim == "superadditivity";
  for (const PairViolation& v : r.violations) {
    ojson item;
    item["s"] = coalition_to_json(v.s, g);
    item["t"] = coalition_to_json(v.t, g);
    item["v_s"] = jnum(v.v_s);
    item["v_t"] = jnum(v.v_t);
    if (superadditive) item["v_union"] = jnum(v.v_union);
    item["deficit"] = jnum(v.deficit);
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);
  return out;
}

ojson to_json(const GameDecomposition& d, const WeightedDigraph& g) {
  ojson out;
  ojson terms = ojson::array();
  for (const UnanimityTerm& term : d.terms) {
    ojson item;
    item["support"] = coalition_to_json(term.support, g);
    item["coeff"] = jnum(term.coefficient);
    terms.push_back(std::move(item));
  }
  out["terms"] = std::move(terms);
  ojson dividends = ojson::object();
  for (const auto& [support, coeff] : d.aggregated)
    dividends[coalition_key(support, g)] = jnum(coeff);
  out["dividends"] = std::move(dividends);
  return out;
}

ojson to_json(const MarginalEffectReport& r, const WeightedDigraph& g) {
  ojson out;
  out["edge"] = ojson::array({g.label(r.edge_from), g.label(r.edge_to)});
  out["target"] = g.label(r.target);
  out["method"] = r.method == ValueKind::shapley ? "shapley" : "banzhaf";
  out["rank_used"] = r.rank_used;
  out["internal_coeff"] = jnum(r.internal_coeff);
  out["external_coeff"] = jnum(r.external_coeff);
  out["total_coeff"] = jnum(r.total_coeff);
  out["valid_epsilon_window"] =
      ojson::array({jnum(r.valid_epsilon_window.lo), jnum(r.valid_epsilon_window.hi)});
  return out;
}

ojson to_json(const CoreReport& r, const WeightedDigraph& g) {
  ojson out;
  out["allocation"] = to_json(r.allocation, g);
  out["efficiency_ok"] = r.efficiency_ok;
  out["payoff_sum"] = jnum(r.payoff_sum);
  out["grand_value"] = jnum(r.grand_value);
  if (r.identity_lhs) out["identity_lhs"] = jnum(*r.identity_lhs);
  if (r.identity_rhs) out["identity_rhs"] = jnum(*r.identity_rhs);
  out["membership_checked"] = r.membership_checked;
  out["n_checked"] = r.n_checked;
  out["is_unique_checked"] = r.is_unique_checked;
  ojson violations = ojson::array();
  for (const CoreViolation& v : r.violations) {
    ojson item;
    item["coalition"] = coalition_to_json(v.coalition, g);
    item["value"] = jnum(v.value);
    item["payoff"] = jnum(v.payoff);
    item["deficit"] = jnum(v.deficit);
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);
  out["in_core"] = r.in_core();
  return out;
}

ojson to_json(const TotalBalancednessReport& r, const WeightedDigraph& g) {
  ojson out;
  out["claim"] = "total_balancedness";
  out["n_checked"] = r.n_checked;
  ojson violations = ojson::array();
  for (const SubgameViolation& v : r.violations) {
    ojson item;
    item["subgame"] = coalition_to_json(v.s, g);
    item["coalition"] = coalition_to_json(v.t, g);
    item["value"] = jnum(v.value);
    item["payoff"] = jnum(v.payoff);
    item["deficit"] = jnum(v.deficit);
    violations.push_back(std::move(item));
  }
  out["violations"] = std::move(violations);
  return out;
}

ojson to_json(const SweepTable& t, const WeightedDigraph& g) {
  ojson out;
  out["edge"] = ojson::array({g.label(t.edge_from), g.label(t.edge_to)});
  out["method"] = t.method == ValueKind::shapley ? "shapley" : "banzhaf";
  ojson targets = ojson::array();
  for (PlayerId p : t.targets) targets.push_back(g.label(p));
  out["targets"] = std::move(targets);
  ojson breakpoints = ojson::array();
  for (double b : t.breakpoints) breakpoints.push_back(jnum(b));
  out["breakpoints"] = std::move(breakpoints);
  ojson grid = ojson::array();
  for (double w : t.grid) grid.push_back(jnum(w));
  out["grid"] = std::move(grid);
  ojson values = ojson::object();
  for (std::size_t k = 0; k < t.targets.size(); ++k) {
    ojson column = ojson::array();
    for (double v : t.values[k]) column.push_back(jnum(v));
    values[g.label(t.targets[k])] = std::move(column);
  }
  out["values"] = std::move(values);
  ojson ties = ojson::array();
  for (char flag : t.tie_ambiguous) ties.push_back(flag != 0);
  out["tie_ambiguous"] = std::move(ties);
  ojson segments = ojson::array();
  for (const SweepTable::Segment& s : t.segments) {
    ojson item;
    item["lo"] = jnum(s.lo);
    item["hi"] = jnum(s.hi);
    ojson slopes = ojson::object();
    ojson residuals = ojson::object();
    for (std::size_t k = 0; k < t.targets.size(); ++k) {
      slopes[g.label(t.targets[k])] = jnum_or_null(s.slopes[k]);
      residuals[g.label(t.targets[k])] = jnum_or_null(s.max_residuals[k]);
    }
    item["slopes"] = std::move(slopes);
    item["max_residuals"] = std::move(residuals);
    segments.push_back(std::move(item));
  }
  out["segments"] = std::move(segments);
  return out;
}

std::string sweep_to_tsv(const SweepTable& t, const WeightedDigraph& g) {
  std::ostringstream out;
  out << "# edge: " << g.label(t.edge_from) << " -> " << g.label(t.edge_to) << "\n";
  out << "# method: " << (t.method == ValueKind::shapley ? "shapley" : "banzhaf") << "\n";
  out << "# breakpoints:";
  for (double b : t.breakpoints) out << ' ' << format_real(b);
  out << "\n";
  for (const SweepTable::Segment& s : t.segments) {
    out << "# segment [" << format_real(s.lo) << ", " << format_real(s.hi) << "] slopes:";
    for (std::size_t k = 0; k < t.targets.size(); ++k) {
      out << ' ' << g.label(t.targets[k]) << '=';
      out << (std::isnan(s.slopes[k]) ? std::string("nan") : format_real(s.slopes[k]));
    }
    out << "\n";
  }
  out << "weight";
  for (PlayerId p : t.targets) out << '\t' << g.label(p);
  out << "\tbreakpoint\n";
  for (std::size_t k = 0; k < t.grid.size(); ++k) {
    out << format_real(t.grid[k]);
    for (std::size_t c = 0; c < t.targets.size(); ++c)
      out << '\t' << format_real(t.values[c][k]);
    out << '\t' << (t.tie_ambiguous[k] ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace trustgame
