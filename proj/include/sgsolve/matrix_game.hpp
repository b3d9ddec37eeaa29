#pragma once

#include <optional>
#include <vector>

#include "sgsolve/numeric.hpp"

namespace sgsolve {

// Zero-sum matrix game: entry a(i,j) is the payoff from the column player
// (II) to the row player (I).
struct MatrixGame {
  int m = 0, n = 0;
  std::vector<Rat> a;  // row-major, m*n entries

  MatrixGame() = default;
  MatrixGame(int m_, int n_) : m(m_), n(n_), a(m_ * n_, Rat(0)) {
    if (m_ < 1 || n_ < 1) throw invalid_input("matrix game needs m,n >= 1");
  }
  const Rat& at(int i, int j) const { return a[i * n + j]; }
  Rat& at(int i, int j) { return a[i * n + j]; }
  MatrixGame transposed_negated() const;
};

// Exact solution with the duality certificate. Constraint indices for the
// basis follow the LP over variables (x, v):
//   0..n-1   : column constraints  sum_i a_ij x_i >= v
//   n..n+m-1 : x_i >= 0
//   n+m      : sum_i x_i = 1  (always part of a potential basis set)
struct GameSolution {
  Rat value;
  std::vector<Rat> x;  // length m
  std::vector<Rat> y;  // length n
  std::optional<std::vector<int>> basis;

  // Exact duality certificate:
  //   min_j (x^T A)_j = value = max_i (A y)_i, x,y stochastic.
  bool certificate_holds(const MatrixGame& g) const;
};

// Exact value and optimal strategies via simplex on the value LP with
// Bland's rule. When m > n the transposed game is solved instead.
GameSolution solve(const MatrixGame& g);

// Independent oracle: enumerate all potential basis sets, solve each square
// system exactly, filter feasible ones and maximize the value.
GameSolution solve_by_basis_enumeration(const MatrixGame& g);

// max_ij |a_ij - b_ij|; an upper bound on |val(a) - val(b)|.
Rat value_distance_bound(const MatrixGame& a, const MatrixGame& b);

}  // namespace sgsolve
