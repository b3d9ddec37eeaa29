#pragma once

#include <optional>
#include <vector>

#include "sgsolve/matrix_game.hpp"
#include "sgsolve/polynomial.hpp"

namespace sgsolve {

// Exact integer fraction (no canonicalization on the hot path).
struct Frac {
  Int num, den;  // den > 0
  Rat to_rat() const {
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
};

// |f| compared with |g|: -1, 0, +1.
int cmp_abs(const Frac& f, const Frac& g);
// |f| compared with |d| for a dyadic d.
int cmp_abs_dyadic(const Frac& f, const Dyadic& d);

// Matrix game whose entries are affine in one scalar parameter,
// A(w) = C + D w. Values at dyadic parameters are produced from the Cramer
// polynomials of a cached optimal potential basis set: feasibility and dual
// feasibility are polynomial sign conditions in w, so consecutive queries on
// nearby parameters cost a handful of integer Horner evaluations. On a sign
// failure the game is re-solved cold and the bundle rebuilt.
class ParamMatrixGame {
 public:
  ParamMatrixGame(std::vector<std::vector<Rat>> C, std::vector<std::vector<Rat>> D);

  // Exact value of the instantiated game at w.
  Frac value_at(const Dyadic& w);
  // Number of cold re-solves so far (diagnostic).
  int rebuild_count() const { return rebuilds_; }

  MatrixGame instantiate(const Rat& w) const;

 private:
  struct Bundle {
    std::vector<int> basis;
    int max_degree = 0;
    IntPoly den;                    // common-scaled det(M_B)
    IntPoly val;                    // common-scaled det((M_B)_{m+1})
    std::vector<IntPoly> primal;    // P_i, sign * sign(den) >= 0 required
    std::vector<IntPoly> slack;     // S_j for j not in B, same sign condition
    std::vector<IntPoly> dual_geq;  // sign * sign(den) >= 0 required
    std::vector<IntPoly> dual_leq;  // sign * sign(den) <= 0 required
  };

  void rebuild(const Dyadic& w);
  bool flipped_ = false;  // true when the stored data is the transposed game
  int m_ = 0, n_ = 0;
  std::vector<std::vector<Rat>> C_, D_;
  std::optional<Bundle> bundle_;
  int rebuilds_ = 0;
};

}  // namespace sgsolve
