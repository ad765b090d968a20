#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trustgame/coalition.hpp"
#include "trustgame/common.hpp"
#include "trustgame/errors.hpp"

namespace trustgame {

struct Edge {
  PlayerId from = 0;
  PlayerId to = 0;
  double weight = 0.0;
};

// Weighted directed graph over players 0..n-1, the game's sole input.
//
// Weights live in [0,1]; self-loops and duplicate ordered pairs are
// rejected. Zero-weight edges are kept and are semantically meaningful: a
// zero-weight in-edge from outside a coalition pins that member's external
// minimum to zero, which an absent edge does not. External string labels
// map to dense ids at parse time and are retained for output.
//
// Immutable after construction; safe to share across threads.
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  WeightedDigraph(int n, std::vector<Edge> edges, std::vector<std::string> labels = {});

  int player_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Edge ids incident to a player, in edge insertion order.
  const std::vector<int>& out_edge_ids(PlayerId i) const;
  const std::vector<int>& in_edge_ids(PlayerId i) const;

  const std::string& label(PlayerId i) const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<PlayerId> find_player(std::string_view label) const;

  std::optional<int> find_edge(PlayerId from, PlayerId to) const;

  // Sum of all edge weights; equals the grand-coalition value.
  double total_weight() const { return total_weight_; }

  // Copy with one existing edge reweighted. The only mutation-shaped API;
  // used by the sensitivity sweeps.
  WeightedDigraph with_edge_weight(PlayerId from, PlayerId to, double weight) const;

  void check_player(PlayerId i) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, PlayerId> label_index_;
  double total_weight_ = 0.0;
};

enum class GraphFormat { edge_list, json };

// Edge-list format: one `<from> <to> <weight>` per line, whitespace
// separated; `#` starts a comment; blank lines are ignored.
// JSON format: {"nodes": [labels...], "edges": [[from, to, weight], ...]}
// where "nodes" is optional and edge endpoints are labels (strings) or,
// when "nodes" is present, 0-based indices into it. Bare integers without
// a "nodes" array are treated as labels.
WeightedDigraph parse_graph(std::istream& in, GraphFormat format);
WeightedDigraph parse_graph(const std::string& text, GraphFormat format);

// Reads a file, inferring the format from the extension (".json" -> json).
WeightedDigraph load_graph(const std::string& path);
WeightedDigraph load_graph(const std::string& path, GraphFormat format);

// Player i's in-neighbors sorted by nondecreasing weight. Equal weights
// order by ascending neighbor id, so the profile is a deterministic
// function of the graph. Rank t is 1-based; weight_at_rank(0) = 0 by
// convention and is not a stored neighbor.
struct InNeighborProfile {
  struct Entry {
    PlayerId neighbor = 0;
    double weight = 0.0;
  };

  PlayerId owner = 0;
  std::vector<Entry> ordered;

  int m() const { return static_cast<int>(ordered.size()); }
  double weight_at_rank(int t) const;
  // 1-based rank of a neighbor in the sorted order; 0 if not an in-neighbor.
  int rank_of(PlayerId neighbor) const;
};

InNeighborProfile in_neighbor_profile(const WeightedDigraph& g, PlayerId i);

// The inclusion chain {i} = T(1) ⊂ T(2) ⊂ ... ⊂ T(m+1); each step adds the
// next in-neighbor in rank order. These sets carry the unanimity terms of
// the external game.
std::vector<Coalition> chain_supports(const InNeighborProfile& profile);

// S(r) = sum over t = r+1..m of (w(t) - w(t-1)) / d(t) for r = 0..m, where
// w(t) is the t-th smallest in-weight and d(t) = t (shapley) or 2^(t-1)
// (banzhaf). Each edge's cross-term contribution to a closed-form value
// becomes a constant-time lookup, so the whole computation is O(E log E).
std::vector<double> tail_suffix_sums(const InNeighborProfile& profile, ValueKind kind);

}  // namespace trustgame
