#pragma once

#include "sgsolve/game_models.hpp"
#include "sgsolve/polynomial.hpp"

namespace sgsolve {

// A single-position m x m diagonal game: payoff alpha_i on the diagonal,
// continuation probability beta back into the position on diagonal cells.
// Its value v solves  sum_i v / (alpha_i + beta v) = 1.
struct DiagonalSpec {
  std::vector<Rat> alphas;  // all > 0
  Rat beta;                 // 0 <= beta < 1
};

StochasticGame diagonal_game(const DiagonalSpec& spec);

// k-th elementary symmetric polynomial of the given values; E_0 = 1.
Rat elementary_symmetric(const std::vector<Rat>& values, int k);

// Primitive integer polynomial proportional to
//   c^m F_m(v) = sum_k E_{m-k}(alpha) (1 - c k) c^{m-k} v^k,
// positive leading coefficient. The value of diagonal_game({alpha, 1/c}) is a
// root.
IntPoly F_m_polynomial(const std::vector<Rat>& alphas, const Rat& c);

// m-th cyclotomic polynomial via exact division of x^m - 1.
IntPoly cyclotomic(int m);

// S_k(x) = E_k(1, x, ..., x^(m-1)).
IntPoly S_k_polynomial(int m, int k);

// (N+1)-position game: the first N positions are independent single-position
// games; the dummy last position stops with probability 1/2 and moves to
// position i with probability k_i / (2K), K = sum k_i. Its value is
// (sum_i k_i v_i) / (2K).
StochasticGame composite_game(const std::vector<StochasticGame>& singles,
                              const std::vector<long>& weights);

// The alpha_i = x^(i-1) specialization (values taken pre-normalization).
DiagonalSpec specialized_diagonal(int m, long x, const Rat& c);

}  // namespace sgsolve
