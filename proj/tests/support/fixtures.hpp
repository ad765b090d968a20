#pragma once

#include "trustgame/graph.hpp"

namespace fixtures {

// Two players, one trust edge 1 -> 2 at 0.6.
inline trustgame::WeightedDigraph g2() {
  return trustgame::WeightedDigraph(2, {{0, 1, 0.6}}, {"1", "2"});
}

// Three players; 2 and 3 both trust 1 (0.2 and 0.5).
inline trustgame::WeightedDigraph g3() {
  return trustgame::WeightedDigraph(3, {{1, 0, 0.2}, {2, 0, 0.5}}, {"1", "2", "3"});
}

// Mutual i <-> j pair with side in-neighbors on both: the marginal-effects
// example. `a` is the swept weight of i -> j.
inline trustgame::WeightedDigraph gf(double a = 0.4) {
  return trustgame::WeightedDigraph(7,
                                    {
                                        {0, 1, a},    // i -> j
                                        {1, 0, 0.4},  // j -> i
                                        {2, 1, 0.2},  // k1 -> j
                                        {3, 1, 0.5},  // k2 -> j
                                        {4, 1, 0.8},  // k3 -> j
                                        {5, 0, 0.3},  // k4 -> i
                                        {6, 0, 0.6},  // k5 -> i
                                    },
                                    {"i", "j", "k1", "k2", "k3", "k4", "k5"});
}

inline constexpr trustgame::PlayerId kI = 0;
inline constexpr trustgame::PlayerId kJ = 1;
inline constexpr trustgame::PlayerId kK1 = 2;
inline constexpr trustgame::PlayerId kK2 = 3;
inline constexpr trustgame::PlayerId kK3 = 4;

inline trustgame::WeightedDigraph edgeless(int n) {
  return trustgame::WeightedDigraph(n, {});
}

}  // namespace fixtures
