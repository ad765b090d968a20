// Command-line front end: parses a graph, runs the solvers/checkers, and
// prints deterministic JSON (or TSV for sweeps) for scripting and plotting.
//
// Exit codes: 0 success, 1 input error, 2 a verification suite found
// violations.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trustgame/core.hpp"
#include "trustgame/game.hpp"
#include "trustgame/graph.hpp"
#include "trustgame/json_io.hpp"
#include "trustgame/mobius.hpp"
#include "trustgame/parallel.hpp"
#include "trustgame/values.hpp"

namespace {

using namespace trustgame;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitViolations = 2;

struct CommonOptions {
  std::string graph_path;
  std::string format = "auto";
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("graph", opts->graph_path, "graph file (edge list or JSON)")
      ->required();
  cmd->add_option("--format", opts->format, "input format: auto, edge_list, json")
      ->check(CLI::IsMember({"auto", "edge_list", "json"}))
      ->capture_default_str();
  cmd->add_option("--threads", opts->threads,
                  "worker cap for exhaustive checks (output is identical for any value)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

WeightedDigraph load(const CommonOptions& opts) {
  set_worker_count(opts.threads);
  if (opts.format == "edge_list") return load_graph(opts.graph_path, GraphFormat::edge_list);
  if (opts.format == "json") return load_graph(opts.graph_path, GraphFormat::json);
  return load_graph(opts.graph_path);
}

// TRUSTGAME_MAX_N overrides every exhaustive guard; an explicit --max-n
// flag wins over the environment.
int guard_default(int fallback) {
  const char* env = std::getenv("TRUSTGAME_MAX_N");
  if (env == nullptr || *env == '\0') return fallback;
  try {
    return std::stoi(env);
  } catch (const std::exception&) {
    throw Error(std::string("TRUSTGAME_MAX_N is not an integer: ") + env);
  }
}

Coalition parse_coalition(const WeightedDigraph& g, const std::string& csv) {
  std::vector<PlayerId> ids;
  std::istringstream in(csv);
  std::string label;
  while (std::getline(in, label, ',')) {
    if (label.empty()) continue;
    auto id = g.find_player(label);
    if (!id) throw Error("unknown player label '" + label + "'");
    ids.push_back(*id);
  }
  return Coalition(std::move(ids));
}

std::pair<PlayerId, PlayerId> parse_edge_arg(const WeightedDigraph& g,
                                             const std::string& csv) {
  auto comma = csv.find(',');
  if (comma == std::string::npos || comma == 0 || comma + 1 >= csv.size())
    throw Error("--edge expects 'from,to'");
  auto from = g.find_player(csv.substr(0, comma));
  auto to = g.find_player(csv.substr(comma + 1));
  if (!from || !to) throw Error("unknown player label in --edge '" + csv + "'");
  return {*from, *to};
}

ValueKind parse_method(const std::string& method) {
  return method == "banzhaf" ? ValueKind::banzhaf : ValueKind::shapley;
}

void print(const ojson& doc) { std::cout << doc.dump(2) << "\n"; }

int run_value(const CommonOptions& common, const std::string& coalition_csv,
              bool have_coalition) {
  WeightedDigraph g = load(common);
  Coalition s = have_coalition ? parse_coalition(g, coalition_csv)
                               : Coalition::full(g.player_count());
  print(to_json(coalition_value(g, s), s, g));
  return kExitOk;
}

int run_allocation(const CommonOptions& common, ValueKind kind, bool with_oracle,
                   int max_n) {
  WeightedDigraph g = load(common);
  Allocation closed =
      kind == ValueKind::shapley ? shapley_closed_form(g) : banzhaf_closed_form(g);
  ojson doc = to_json(closed, g);
  if (with_oracle) {
    Allocation brute = kind == ValueKind::shapley ? shapley_bruteforce(g, max_n)
                                                  : banzhaf_bruteforce(g, max_n);
    ojson oracle = ojson::array();
    double max_diff = 0.0;
    for (std::size_t i = 0; i < brute.payoffs.size(); ++i) {
      oracle.push_back(round_sig(brute.payoffs[i]));
      max_diff = std::max(max_diff, std::fabs(brute.payoffs[i] - closed.payoffs[i]));
    }
    doc["oracle_payoffs"] = std::move(oracle);
    doc["max_abs_diff"] = round_sig(max_diff);
  }
  print(doc);
  return kExitOk;
}

int run_core(const CommonOptions& common, int max_n, const std::string& allocation_csv,
             bool have_allocation) {
  WeightedDigraph g = load(common);
  CoreReport report;
  if (have_allocation) {
    Allocation x;
    x.kind = Allocation::Kind::core;
    std::istringstream in(allocation_csv);
    std::string token;
    while (std::getline(in, token, ',')) {
      try {
        x.payoffs.push_back(std::stod(token));
      } catch (const std::exception&) {
        throw Error("--allocation expects comma-separated numbers");
      }
    }
    for (double p : x.payoffs) x.payoff_sum += p;
    x.efficient = approx_equal(x.payoff_sum, g.total_weight());
    report = is_in_core(g, x, kTol, max_n);
  } else {
    report = core_report(g, kTol, max_n);
  }
  print(to_json(report, g));
  return report.in_core() ? kExitOk : kExitViolations;
}

int run_decompose(const CommonOptions& common) {
  WeightedDigraph g = load(common);
  print(to_json(full_decomposition(g), g));
  return kExitOk;
}

int run_marginal(const CommonOptions& common, const std::string& edge_csv,
                 const std::string& target_label, const std::string& method) {
  WeightedDigraph g = load(common);
  auto [from, to] = parse_edge_arg(g, edge_csv);
  auto target = g.find_player(target_label);
  if (!target) throw Error("unknown player label '" + target_label + "'");
  MarginalEffectReport report =
      parse_method(method) == ValueKind::shapley
          ? marginal_effect_shapley(g, from, to, *target)
          : marginal_effect_banzhaf(g, from, to, *target);
  print(to_json(report, g));
  return kExitOk;
}

int run_sweep(const CommonOptions& common, const std::string& edge_csv,
              const std::string& targets_csv, int steps, const std::string& method,
              bool as_json) {
  WeightedDigraph g = load(common);
  auto [from, to] = parse_edge_arg(g, edge_csv);

  std::vector<PlayerId> targets;
  if (targets_csv.empty()) {
    for (PlayerId i = 0; i < g.player_count(); ++i) targets.push_back(i);
  } else {
    targets = parse_coalition(g, targets_csv).members();
  }
  if (steps < 2) throw Error("--steps must be at least 2");
  std::vector<double> grid(static_cast<std::size_t>(steps), 0.0);
  for (int k = 0; k < steps; ++k)
    grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (steps - 1);

  SweepTable table = sweep_edge(g, from, to, targets, grid, parse_method(method));
  if (as_json) {
    print(to_json(table, g));
  } else {
    std::cout << sweep_to_tsv(table, g);
  }
  return kExitOk;
}

int run_props(const CommonOptions& common) {
  WeightedDigraph g = load(common);
  ojson doc;
  doc["n"] = g.player_count();
  doc["edge_count"] = g.edge_count();
  ojson players = ojson::array();
  ojson isolated = ojson::array();
  ojson zero_shapley = ojson::array();
  for (PlayerId i = 0; i < g.player_count(); ++i) {
    bool is_isolated = g.in_edge_ids(i).empty() && g.out_edge_ids(i).empty();
    bool zero = is_zero_shapley_player(g, i);
    ojson item;
    item["label"] = g.label(i);
    item["in_degree"] = g.in_edge_ids(i).size();
    item["out_degree"] = g.out_edge_ids(i).size();
    item["isolated"] = is_isolated;
    item["zero_shapley"] = zero;
    players.push_back(std::move(item));
    if (is_isolated) isolated.push_back(g.label(i));
    if (zero) zero_shapley.push_back(g.label(i));
  }
  doc["players"] = std::move(players);
  doc["isolated"] = std::move(isolated);
  doc["zero_shapley"] = std::move(zero_shapley);
  print(doc);
  return kExitOk;
}

// Suite builders for `verify`; each returns the report JSON plus pass/fail.

std::pair<ojson, bool> mobius_suite(const WeightedDigraph& g, int max_n) {
  // Closed-form decomposition against exhaustive inversion, plus
  // reconstruction of v from the dividends on every coalition.
  int n = g.player_count();
  GameDecomposition d = full_decomposition(g);
  auto oracle = mobius_oracle(g, max_n);
  ojson suite;
  suite["claim"] = "mobius";
  std::uint64_t checked = 0;
  ojson violations = ojson::array();
  for (const auto& [support, dividend] : oracle) {
    ++checked;
    double closed = d.dividend(support);
    if (!approx_equal(closed, dividend)) {
      ojson item;
      item["support"] = coalition_to_json(support, g);
      item["closed_form"] = round_sig(closed);
      item["oracle"] = round_sig(dividend);
      violations.push_back(std::move(item));
    }
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    ++checked;
    Coalition s = Coalition::from_mask(mask);
    double reconstructed = evaluate_decomposition(d, s);
    double direct = coalition_value(g, s).total;
    if (!approx_equal(reconstructed, direct)) {
      ojson item;
      item["coalition"] = coalition_to_json(s, g);
      item["reconstructed"] = round_sig(reconstructed);
      item["value"] = round_sig(direct);
      violations.push_back(std::move(item));
    }
  }
  suite["n_checked"] = checked;
  bool ok = violations.empty();
  suite["violations"] = std::move(violations);
  return {std::move(suite), ok};
}

std::pair<ojson, bool> value_oracle_suite(const WeightedDigraph& g, int max_n) {
  int n = g.player_count();
  ojson suite;
  suite["claim"] = "value_oracle";
  ojson violations = ojson::array();
  for (ValueKind kind : {ValueKind::shapley, ValueKind::banzhaf}) {
    Allocation closed =
        kind == ValueKind::shapley ? shapley_closed_form(g) : banzhaf_closed_form(g);
    Allocation brute = kind == ValueKind::shapley ? shapley_bruteforce(g, max_n)
                                                  : banzhaf_bruteforce(g, max_n);
    for (PlayerId i = 0; i < n; ++i) {
      double a = closed.payoffs[static_cast<std::size_t>(i)];
      double b = brute.payoffs[static_cast<std::size_t>(i)];
      if (!approx_equal(a, b)) {
        ojson item;
        item["method"] = kind == ValueKind::shapley ? "shapley" : "banzhaf";
        item["player"] = g.label(i);
        item["closed_form"] = round_sig(a);
        item["bruteforce"] = round_sig(b);
        violations.push_back(std::move(item));
      }
    }
  }
  suite["n_checked"] = static_cast<std::uint64_t>(2 * n);
  bool ok = violations.empty();
  suite["violations"] = std::move(violations);
  return {std::move(suite), ok};
}

std::pair<ojson, bool> core_suite(const WeightedDigraph& g, int max_n) {
  CoreReport r = core_report(g, kTol, max_n);
  ojson suite = to_json(r, g);
  suite["claim"] = "core";
  bool identity_ok = !r.identity_lhs || approx_equal(*r.identity_lhs, *r.identity_rhs);
  return {std::move(suite), r.in_core() && identity_ok && r.is_unique_checked};
}

int run_verify(const CommonOptions& common, int max_n, int sample, std::uint64_t seed) {
  WeightedDigraph g = load(common);
  int n = g.player_count();

  ojson suites = ojson::array();
  ojson skipped = ojson::array();
  bool passed = true;
  auto add_suite = [&](ojson suite, bool ok) {
    suites.push_back(std::move(suite));
    passed = passed && ok;
  };

  if (sample > 0) {
    // Randomized pair checks; the seed fully determines the sampled pairs.
    CheckReport super = check_superadditive_sampled(g, sample, seed);
    add_suite(to_json(super, g), super.passed());
    CheckReport mono = check_monotone_sampled(g, sample, seed);
    add_suite(to_json(mono, g), mono.passed());
  } else {
    CheckReport super = check_superadditive(g, max_n);
    add_suite(to_json(super, g), super.passed());
    CheckReport mono = check_monotone(g, max_n);
    add_suite(to_json(mono, g), mono.passed());
  }

  if (n > max_n) {
    // Reachable only in sampled mode; the exhaustive suites have no
    // sampled counterpart and are reported as skipped, not silently run.
    for (const char* claim : {"mobius", "value_oracle", "core", "total_balancedness"})
      skipped.push_back(claim);
  } else {
    auto [mobius, mobius_ok] = mobius_suite(g, max_n);
    add_suite(std::move(mobius), mobius_ok);
    auto [values, values_ok] = value_oracle_suite(g, max_n);
    add_suite(std::move(values), values_ok);
    auto [core, core_ok] = core_suite(g, max_n);
    add_suite(std::move(core), core_ok);
    TotalBalancednessReport balancedness = verify_total_balancedness(g, max_n);
    add_suite(to_json(balancedness, g), balancedness.passed());
  }

  ojson doc;
  doc["n"] = n;
  doc["max_n"] = max_n;
  if (sample > 0) doc["sample"] = sample;
  doc["suites"] = std::move(suites);
  if (!skipped.empty()) doc["skipped"] = std::move(skipped);
  doc["passed"] = passed;
  print(doc);
  return passed ? kExitOk : kExitViolations;
}

int run_app(int argc, char** argv) {
  CLI::App app{"trust game analysis over weighted directed graphs"};
  app.require_subcommand(1);

  int exit_code = kExitOk;

  // value
  CommonOptions value_common;
  std::string value_coalition;
  auto* value_cmd = app.add_subcommand("value", "evaluate v(S) for one coalition");
  add_common(value_cmd, &value_common);
  auto* value_coalition_opt = value_cmd->add_option(
      "--coalition", value_coalition,
      "comma-separated player labels; defaults to the grand coalition");
  value_cmd->callback([&] {
    exit_code = run_value(value_common, value_coalition, value_coalition_opt->count() > 0);
  });

  // shapley / banzhaf
  CommonOptions shapley_common;
  bool shapley_oracle = false;
  int shapley_max_n = guard_default(kDefaultBruteForceGuard);
  auto* shapley_cmd = app.add_subcommand("shapley", "closed-form Shapley value");
  add_common(shapley_cmd, &shapley_common);
  shapley_cmd->add_flag("--oracle", shapley_oracle,
                        "also run the brute-force oracle and report the max difference");
  shapley_cmd->add_option("--max-n", shapley_max_n, "guard for the brute-force oracle")
      ->capture_default_str();
  shapley_cmd->callback([&] {
    exit_code =
        run_allocation(shapley_common, ValueKind::shapley, shapley_oracle, shapley_max_n);
  });

  CommonOptions banzhaf_common;
  bool banzhaf_oracle = false;
  int banzhaf_max_n = guard_default(kDefaultBruteForceGuard);
  auto* banzhaf_cmd = app.add_subcommand("banzhaf", "closed-form Banzhaf value");
  add_common(banzhaf_cmd, &banzhaf_common);
  banzhaf_cmd->add_flag("--oracle", banzhaf_oracle,
                        "also run the brute-force oracle and report the max difference");
  banzhaf_cmd->add_option("--max-n", banzhaf_max_n, "guard for the brute-force oracle")
      ->capture_default_str();
  banzhaf_cmd->callback([&] {
    exit_code =
        run_allocation(banzhaf_common, ValueKind::banzhaf, banzhaf_oracle, banzhaf_max_n);
  });

  // core
  CommonOptions core_common;
  int core_max_n = guard_default(kDefaultCoreGuard);
  std::string core_allocation_csv;
  auto* core_cmd = app.add_subcommand("core", "core allocation and membership report");
  add_common(core_cmd, &core_common);
  core_cmd->add_option("--max-n", core_max_n, "guard for the exhaustive membership check")
      ->capture_default_str();
  auto* core_allocation_opt = core_cmd->add_option(
      "--allocation", core_allocation_csv,
      "check this comma-separated payoff vector instead of the core point");
  core_cmd->callback([&] {
    exit_code = run_core(core_common, core_max_n, core_allocation_csv,
                         core_allocation_opt->count() > 0);
  });

  // decompose
  CommonOptions decompose_common;
  auto* decompose_cmd =
      app.add_subcommand("decompose", "unanimity decomposition and dividends");
  add_common(decompose_cmd, &decompose_common);
  decompose_cmd->callback([&] { exit_code = run_decompose(decompose_common); });

  // marginal
  CommonOptions marginal_common;
  std::string marginal_edge, marginal_target, marginal_method = "shapley";
  auto* marginal_cmd =
      app.add_subcommand("marginal", "marginal effect of one edge weight on one player");
  add_common(marginal_cmd, &marginal_common);
  marginal_cmd->add_option("--edge", marginal_edge, "edge as 'from,to'")->required();
  marginal_cmd->add_option("--target", marginal_target, "player whose value is affected")
      ->required();
  marginal_cmd->add_option("--method", marginal_method, "shapley or banzhaf")
      ->check(CLI::IsMember({"shapley", "banzhaf"}))
      ->capture_default_str();
  marginal_cmd->callback([&] {
    exit_code = run_marginal(marginal_common, marginal_edge, marginal_target,
                             marginal_method);
  });

  // sweep
  CommonOptions sweep_common;
  std::string sweep_edge_arg, sweep_targets, sweep_method = "shapley";
  int sweep_steps = 101;
  bool sweep_json = false;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "sweep one edge weight over [0,1] and tabulate values");
  add_common(sweep_cmd, &sweep_common);
  sweep_cmd->add_option("--edge", sweep_edge_arg, "edge as 'from,to'")->required();
  sweep_cmd->add_option("--targets", sweep_targets,
                        "comma-separated player labels (default: all players)");
  sweep_cmd->add_option("--steps", sweep_steps, "number of grid points")
      ->capture_default_str();
  sweep_cmd->add_option("--method", sweep_method, "shapley or banzhaf")
      ->check(CLI::IsMember({"shapley", "banzhaf"}))
      ->capture_default_str();
  sweep_cmd->add_flag("--json", sweep_json, "emit JSON instead of TSV");
  sweep_cmd->callback([&] {
    exit_code = run_sweep(sweep_common, sweep_edge_arg, sweep_targets, sweep_steps,
                          sweep_method, sweep_json);
  });

  // verify
  CommonOptions verify_common;
  int verify_max_n = guard_default(10);
  int verify_sample = 0;
  std::uint64_t verify_seed = 1;
  auto* verify_cmd = app.add_subcommand(
      "verify", "run every oracle and property suite against this graph");
  add_common(verify_cmd, &verify_common);
  verify_cmd->add_option("--max-n", verify_max_n, "guard for the exhaustive suites")
      ->capture_default_str();
  verify_cmd
      ->add_option("--sample", verify_sample,
                   "sample this many random pairs for the superadditivity and "
                   "monotonicity suites instead of exhausting them")
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify_seed, "seed for sampled mode")
      ->capture_default_str();
  verify_cmd->callback([&] {
    exit_code = run_verify(verify_common, verify_max_n, verify_sample, verify_seed);
  });

  // props
  CommonOptions props_common;
  auto* props_cmd =
      app.add_subcommand("props", "structural summary: degrees, isolated, zero-Shapley");
  add_common(props_cmd, &props_common);
  props_cmd->callback([&] { exit_code = run_props(props_common); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
