#pragma once

#include <string>

#include <json.hpp>

#include "trustgame/core.hpp"
#include "trustgame/game.hpp"
#include "trustgame/graph.hpp"
#include "trustgame/mobius.hpp"
#include "trustgame/values.hpp"

namespace trustgame {

using ojson = nlohmann::ordered_json;

// Output floats are rounded to 12 significant digits before serialization,
// so byte output is stable across runs, thread counts and evaluation-order
// noise well below the comparison tolerance.
double round_sig(double x, int digits = 12);
std::string format_real(double x, int digits = 12);

ojson coalition_to_json(const Coalition& s, const WeightedDigraph& g);
std::string coalition_key(const Coalition& s, const WeightedDigraph& g);

ojson to_json(const ValueBreakdown& b, const Coalition& s, const WeightedDigraph& g);
ojson to_json(const Allocation& a, const WeightedDigraph& g);
ojson to_json(const CheckReport& r, const WeightedDigraph& g);
ojson to_json(const GameDecomposition& d, const WeightedDigraph& g);
ojson to_json(const MarginalEffectReport& r, const WeightedDigraph& g);
ojson to_json(const CoreReport& r, const WeightedDigraph& g);
ojson to_json(const TotalBalancednessReport& r, const WeightedDigraph& g);
ojson to_json(const SweepTable& t, const WeightedDigraph& g);

// Plot-ready form: comment header with breakpoints and per-segment slopes,
// then one row per grid point (weight, one column per target, tie flag).
std::string sweep_to_tsv(const SweepTable& t, const WeightedDigraph& g);

}  // namespace trustgame
