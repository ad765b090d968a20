#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "trustgame/common.hpp"
#include "trustgame/errors.hpp"

namespace trustgame {

// A coalition is a set of players stored as a sorted unique id list, so it
// works for any player count. The exhaustive enumeration paths operate on
// raw bitmasks internally and convert at the boundary; those paths are
// guarded far below 64 players.
class Coalition {
 public:
  Coalition() = default;

  Coalition(std::initializer_list<PlayerId> ids)
      : Coalition(std::vector<PlayerId>(ids)) {}

  explicit Coalition(std::vector<PlayerId> ids) : members_(std::move(ids)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.front() < 0)
      throw Error("negative player id in coalition");
  }

  static Coalition from_mask(std::uint64_t mask) {
    Coalition s;
    for (int i = 0; mask != 0; ++i, mask >>= 1)
      if (mask & 1) s.members_.push_back(i);
    return s;
  }

  static Coalition full(int n) {
    Coalition s;
    s.members_.resize(static_cast<std::size_t>(n < 0 ? 0 : n));
    for (int i = 0; i < n; ++i) s.members_[static_cast<std::size_t>(i)] = i;
    return s;
  }

  const std::vector<PlayerId>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }

  bool contains(PlayerId i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }

  // other ⊆ this
  bool contains_all(const Coalition& other) const {
    return std::includes(members_.begin(), members_.end(),
                         other.members_.begin(), other.members_.end());
  }

  Coalition with(PlayerId i) const {
    Coalition s(*this);
    auto it = std::lower_bound(s.members_.begin(), s.members_.end(), i);
    if (it == s.members_.end() || *it != i) s.members_.insert(it, i);
    return s;
  }

  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (PlayerId i : members_) {
      if (i >= 64) throw Error("coalition bitmask requires player ids below 64");
      m |= std::uint64_t{1} << i;
    }
    return m;
  }

  friend bool operator==(const Coalition&, const Coalition&) = default;

  // Lexicographic on the sorted member list; gives maps over coalitions a
  // canonical, serialization-stable order.
  friend std::strong_ordering operator<=>(const Coalition& a, const Coalition& b) {
    return std::lexicographical_compare_three_way(
        a.members_.begin(), a.members_.end(), b.members_.begin(), b.members_.end());
  }

 private:
  std::vector<PlayerId> members_;
};

}  // namespace trustgame
