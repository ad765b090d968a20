#include "trustgame/graph.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace trustgame {

namespace {

bool valid_weight(double w) { return w >= 0.0 && w <= 1.0; }

// Interns labels in first-appearance order.
struct LabelInterner {
  std::vector<std::string> labels;
  std::unordered_map<std::string, PlayerId> index;

  PlayerId intern(const std::string& label) {
    auto it = index.find(label);
    if (it != index.end()) return it->second;
    PlayerId id = static_cast<PlayerId>(labels.size());
    labels.push_back(label);
    index.emplace(label, id);
    return id;
  }
};

}  // namespace

WeightedDigraph::WeightedDigraph(int n, std::vector<Edge> edges,
                                 std::vector<std::string> labels)
    : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (n_ < 0) throw Error("player count must be nonnegative");
  if (labels_.empty()) {
    labels_.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
  }
  if (static_cast<int>(labels_.size()) != n_)
    throw Error("label list size does not match player count");
  for (int i = 0; i < n_; ++i) {
    if (!label_index_.emplace(labels_[static_cast<std::size_t>(i)], i).second)
      throw Error("duplicate player label: " + labels_[static_cast<std::size_t>(i)]);
  }

  out_.resize(static_cast<std::size_t>(n_));
  in_.resize(static_cast<std::size_t>(n_));
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& edge = edges_[static_cast<std::size_t>(e)];
    if (edge.from < 0 || edge.from >= n_ || edge.to < 0 || edge.to >= n_)
      throw Error("edge endpoint out of range");
    if (edge.from == edge.to)
      throw Error("self-loop on player " + labels_[static_cast<std::size_t>(edge.from)]);
    if (!valid_weight(edge.weight))
      throw Error("edge weight outside [0, 1]");
    out_[static_cast<std::size_t>(edge.from)].push_back(e);
    in_[static_cast<std::size_t>(edge.to)].push_back(e);
    total_weight_ += edge.weight;
  }

  // Duplicate ordered pairs: sort a shadow index and scan.
  std::vector<int> order(edges_.size());
  for (int e = 0; e < static_cast<int>(order.size()); ++e)
    order[static_cast<std::size_t>(e)] = e;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Edge& ea = edges_[static_cast<std::size_t>(a)];
    const Edge& eb = edges_[static_cast<std::size_t>(b)];
    return std::pair(ea.from, ea.to) < std::pair(eb.from, eb.to);
  });
  for (std::size_t k = 1; k < order.size(); ++k) {
    const Edge& a = edges_[static_cast<std::size_t>(order[k - 1])];
    const Edge& b = edges_[static_cast<std::size_t>(order[k])];
    if (a.from == b.from && a.to == b.to)
      throw Error("duplicate edge " + labels_[static_cast<std::size_t>(a.from)] +
                  " -> " + labels_[static_cast<std::size_t>(a.to)]);
  }
}

void WeightedDigraph::check_player(PlayerId i) const {
  if (i < 0 || i >= n_)
    throw std::out_of_range("player id " + std::to_string(i) + " out of range [0, " +
                            std::to_string(n_) + ")");
}

const std::vector<int>& WeightedDigraph::out_edge_ids(PlayerId i) const {
  check_player(i);
  return out_[static_cast<std::size_t>(i)];
}

const std::vector<int>& WeightedDigraph::in_edge_ids(PlayerId i) const {
  check_player(i);
  return in_[static_cast<std::size_t>(i)];
}

const std::string& WeightedDigraph::label(PlayerId i) const {
  check_player(i);
  return labels_[static_cast<std::size_t>(i)];
}

std::optional<PlayerId> WeightedDigraph::find_player(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> WeightedDigraph::find_edge(PlayerId from, PlayerId to) const {
  if (from < 0 || from >= n_ || to < 0 || to >= n_) return std::nullopt;
  for (int e : out_[static_cast<std::size_t>(from)])
    if (edges_[static_cast<std::size_t>(e)].to == to) return e;
  return std::nullopt;
}

WeightedDigraph WeightedDigraph::with_edge_weight(PlayerId from, PlayerId to,
                                                  double weight) const {
  auto e = find_edge(from, to);
  if (!e) throw Error("no edge " + label(from) + " -> " + label(to) + " to reweight");
  if (!valid_weight(weight)) throw Error("edge weight outside [0, 1]");
  std::vector<Edge> edges = edges_;
  edges[static_cast<std::size_t>(*e)].weight = weight;
  return WeightedDigraph(n_, std::move(edges), labels_);
}

namespace {

double parse_weight_token(const std::string& token, int line) {
  double w = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, w);
  if (ec != std::errc{} || ptr != end)
    throw ParseError("bad weight '" + token + "'", line);
  if (!valid_weight(w))
    throw ParseError("weight " + token + " outside [0, 1]", line);
  return w;
}

WeightedDigraph parse_edge_list(std::istream& in) {
  LabelInterner interner;
  std::vector<Edge> edges;
  // first line that introduced each ordered pair, for duplicate reporting
  std::unordered_map<std::uint64_t, int> first_seen;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string from_label, to_label, weight_token;
    if (!(fields >> from_label)) continue;  // blank or comment-only line
    if (!(fields >> to_label >> weight_token))
      throw ParseError("expected '<from> <to> <weight>'", line_no);
    std::string extra;
    if (fields >> extra)
      throw ParseError("trailing token '" + extra + "'", line_no);

    double w = parse_weight_token(weight_token, line_no);
    PlayerId from = interner.intern(from_label);
    PlayerId to = interner.intern(to_label);
    if (from == to) throw ParseError("self-loop on '" + from_label + "'", line_no);

    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 32) |
                        static_cast<std::uint32_t>(to);
    auto [it, inserted] = first_seen.emplace(key, line_no);
    if (!inserted)
      throw ParseError("duplicate edge '" + from_label + " " + to_label +
                           "' (first at line " + std::to_string(it->second) + ")",
                       line_no);
    edges.push_back(Edge{from, to, w});
  }
  int n = static_cast<int>(interner.labels.size());
  return WeightedDigraph(n, std::move(edges), std::move(interner.labels));
}

WeightedDigraph parse_json_graph(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  if (!doc.is_object()) throw ParseError("top-level JSON value must be an object");

  LabelInterner interner;
  bool closed_universe = false;
  if (doc.contains("nodes")) {
    const auto& nodes = doc.at("nodes");
    if (!nodes.is_array()) throw ParseError("'nodes' must be an array of labels");
    for (const auto& node : nodes) {
      if (!node.is_string()) throw ParseError("'nodes' entries must be strings");
      std::string label = node.get<std::string>();
      if (interner.index.count(label)) throw ParseError("duplicate node label '" + label + "'");
      interner.intern(label);
    }
    closed_universe = true;
  }

  auto resolve = [&](const nlohmann::json& v, std::size_t k) -> PlayerId {
    std::string locus = "edges[" + std::to_string(k) + "]";
    if (v.is_string()) {
      std::string label = v.get<std::string>();
      if (closed_universe) {
        auto it = interner.index.find(label);
        if (it == interner.index.end())
          throw ParseError(locus + ": unknown node label '" + label + "'");
        return it->second;
      }
      return interner.intern(label);
    }
    if (v.is_number_integer()) {
      long long raw = v.get<long long>();
      if (closed_universe) {
        if (raw < 0 || raw >= static_cast<long long>(interner.labels.size()))
          throw ParseError(locus + ": node index " + std::to_string(raw) + " out of range");
        return static_cast<PlayerId>(raw);
      }
      return interner.intern(std::to_string(raw));
    }
    throw ParseError(locus + ": edge endpoint must be a label or node index");
  };

  if (!doc.contains("edges") || !doc.at("edges").is_array())
    throw ParseError("missing 'edges' array");

  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::size_t> first_seen;
  const auto& edge_array = doc.at("edges");
  for (std::size_t k = 0; k < edge_array.size(); ++k) {
    const auto& entry = edge_array[k];
    std::string locus = "edges[" + std::to_string(k) + "]";
    if (!entry.is_array() || entry.size() != 3)
      throw ParseError(locus + ": expected [from, to, weight]");
    PlayerId from = resolve(entry[0], k);
    PlayerId to = resolve(entry[1], k);
    if (!entry[2].is_number()) throw ParseError(locus + ": weight must be a number");
    double w = entry[2].get<double>();
    if (!valid_weight(w)) throw ParseError(locus + ": weight outside [0, 1]");
    if (from == to) throw ParseError(locus + ": self-loop on '" + interner.labels[static_cast<std::size_t>(from)] + "'");
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 32) |
                        static_cast<std::uint32_t>(to);
    auto [it, inserted] = first_seen.emplace(key, k);
    if (!inserted)
      throw ParseError(locus + ": duplicate edge (first at edges[" +
                       std::to_string(it->second) + "])");
    edges.push_back(Edge{from, to, w});
  }
  int n = static_cast<int>(interner.labels.size());
  return WeightedDigraph(n, std::move(edges), std::move(interner.labels));
}

}  // namespace

WeightedDigraph parse_graph(std::istream& in, GraphFormat format) {
  switch (format) {
    case GraphFormat::edge_list:
      return parse_edge_list(in);
    case GraphFormat::json:
      return parse_json_graph(in);
  }
  throw Error("unknown graph format");
}

WeightedDigraph parse_graph(const std::string& text, GraphFormat format) {
  std::istringstream in(text);
  return parse_graph(in, format);
}

WeightedDigraph load_graph(const std::string& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file: " + path);
  return parse_graph(in, format);
}

WeightedDigraph load_graph(const std::string& path) {
  GraphFormat format = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0
                           ? GraphFormat::json
                           : GraphFormat::edge_list;
  return load_graph(path, format);
}

double InNeighborProfile::weight_at_rank(int t) const {
  if (t == 0) return 0.0;
  if (t < 0 || t > m()) throw std::out_of_range("rank out of range");
  return ordered[static_cast<std::size_t>(t - 1)].weight;
}

int InNeighborProfile::rank_of(PlayerId neighbor) const {
  for (int t = 1; t <= m(); ++t)
    if (ordered[static_cast<std::size_t>(t - 1)].neighbor == neighbor) return t;
  return 0;
}

InNeighborProfile in_neighbor_profile(const WeightedDigraph& g, PlayerId i) {
  g.check_player(i);
  InNeighborProfile profile;
  profile.owner = i;
  for (int e : g.in_edge_ids(i)) {
    const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
    profile.ordered.push_back({edge.from, edge.weight});
  }
  std::sort(profile.ordered.begin(), profile.ordered.end(),
            [](const InNeighborProfile::Entry& a, const InNeighborProfile::Entry& b) {
              return std::pair(a.weight, a.neighbor) < std::pair(b.weight, b.neighbor);
            });
  return profile;
}

std::vector<Coalition> chain_supports(const InNeighborProfile& profile) {
  std::vector<Coalition> chain;
  chain.reserve(static_cast<std::size_t>(profile.m()) + 1);
  Coalition current{profile.owner};
  chain.push_back(current);
  for (const auto& entry : profile.ordered) {
    current = current.with(entry.neighbor);
    chain.push_back(current);
  }
  return chain;
}

std::vector<double> tail_suffix_sums(const InNeighborProfile& profile, ValueKind kind) {
  int m = profile.m();
  std::vector<double> sums(static_cast<std::size_t>(m) + 1, 0.0);
  for (int r = m - 1; r >= 0; --r) {
    int t = r + 1;
    double increment = profile.weight_at_rank(t) - profile.weight_at_rank(t - 1);
    double divisor_inv =
        kind == ValueKind::shapley ? 1.0 / t : std::ldexp(1.0, -(t - 1));
    sums[static_cast<std::size_t>(r)] =
        sums[static_cast<std::size_t>(r + 1)] + increment * divisor_inv;
  }
  return sums;
}

}  // namespace trustgame
