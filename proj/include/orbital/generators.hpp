#pragma once

// Benchmark model families.

#include <cstdint>

#include "orbital/clauses.hpp"
#include "orbital/graph.hpp"

namespace orbital {

// k x k grid, vertices row-major. Names a, b, c, ... when k*k <= 26,
// otherwise r<row>c<col>. Throws InvalidInput for k < 2.
ColoredGraph gen_grid(std::size_t k);

// k + 1 cliques of k - 1 vertices each; member 0 of every clique is joined to
// a hub vertex, which comes last. Names k<clique>_<member> and "hub".
ColoredGraph gen_connected_cliques(std::size_t k);

// Complete graph on k*k vertices named v0, v1, ...
ColoredGraph gen_complete(std::size_t k);

struct GroundedModel {
  WeightedClauseSet clauses;
  Evidence evidence;
};

// Friends & Smokers grounded over `people` persons p1..pN with variables
// S_pi, C_pi and F_pi_pj (all ordered pairs, i = j included):
//   1.1  :: !F_x_y | !S_x | S_y
//   -1.2 :: F_x_y
//   1.5  :: !S_x | C_x
//   -0.6 :: S_x
//   -0.9 :: C_x
// Evidence: round(fraction * people) random persons get a random smoking
// value, and each of them gets min(10, people - 1) random friends.
// Throws InvalidInput for people < 2 or a fraction outside [0, 1].
GroundedModel gen_friends_smokers(std::size_t people, double evidence_fraction = 0.0,
                                  std::uint64_t seed = 0);

}  // namespace orbital
