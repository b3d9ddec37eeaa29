#pragma once

#include <string>

#include "sgsolve/numeric.hpp"

namespace sgsolve {

enum class BoundProvenance { shapley_exact, everett_heuristic, gillette_heuristic };

std::string provenance_name(BoundProvenance p);

// Degree/height/separation data driving the recursive bisection and the
// reconstruction precision. sep_exponent(j) gives e with sep = 2^-e for the
// top-level game; sep_exponent_at exposes the same family for the reduced
// games met during recursion (first argument as in the bisection loop,
// clamped to >= 1).
struct BoundProfile {
  BoundProvenance provenance = BoundProvenance::shapley_exact;
  long degree_bound = 1;
  long height_bitsize_bound = 1;
  int N = 1;
  int m = 1;
  long tau = 1;
  long C = 0;  // heuristic constant; 0 for the exact Shapley profile

  long sep_exponent(long j) const { return sep_exponent_at(N, tau, j); }
  long sep_exponent_at(int level_N, long L, long j) const;
  bool heuristic() const { return provenance != BoundProvenance::shapley_exact; }
};

// 2^-(22 m^2 N^2 L (2m+5)^(N-1) + j (2m+5)^N + 1), exact.
Rat sep_shapley(int N, int m, long L, long j);
// The exponent alone (overflow-checked).
long sep_shapley_exponent(int N, int m, long L, long j);

// degree (2m+5)^N, height bitsize 21 m^2 N^2 tau (2m+5)^(N-1).
BoundProfile shapley_bounds(int N, int m, long tau);
// degree m^(C N^2), height bitsize tau m^(C N^2), sep exponent
// max(tau, j) m^(C N^2); C is a user-supplied constant (heuristic).
BoundProfile everett_bounds(int N, int m, long tau, long C);
BoundProfile gillette_bounds(int N, int m, long tau, long C);

// The four quantities for isolated real solutions of a polynomial system of
// m_polys polynomials of degree d in n variables with coefficient bitsize tau,
// returned as exact exponent integers.
struct IsolatedRootBounds {
  Int degree_bound;          // (2d+1)^n
  Int coeff_bitsize;         // 2n(tau + 4n lg(dm))(2d+1)^(n-1)
  Int root_lower_exponent;   // |root| > 2^-e or root = 0
  Int separation_exponent;   // distinct coordinates differ by >= 2^-e
};
IsolatedRootBounds isolated_root_bounds(long d, long n, long m_polys, long tau);

// Resultant-style bound for g(alpha) = p(alpha)/q(alpha): degree <= 2d and
// bitsize <= 2 d tau + 7 d ceil(lg d).
std::pair<long, long> convert_bounds(long d, long tau);

}  // namespace sgsolve
