#pragma once

#include "sgsolve/game_models.hpp"

namespace sgsolve {

// Certified approximation of the value vector of a Shapley game: the returned
// error bound is exact, derived from the contraction residual
//   ||v - v*||_inf <= ||T(v) - v||_inf / s_min.
struct FixedPointResult {
  std::vector<Rat> values;
  Rat error_bound;
  int rounds = 0;
  bool converged = false;
};

// Safeguarded policy-evaluation iteration: value-iteration steps accelerated
// by exact policy evaluation of the current local-game strategies (a Newton
// step on the smooth piece), accepted only when the residual improves. Stops
// once the certified error drops below 2^-target_bits.
FixedPointResult certified_fixed_point(const StochasticGame& shapley, long target_bits,
                                       int max_rounds = 512);

}  // namespace sgsolve
