#pragma once

#include <string>
#include <vector>

#include "sgsolve/polynomial.hpp"

namespace sgsolve {

// A real algebraic number as a square-free primitive defining polynomial with
// positive leading coefficient plus an isolating interval with rational
// endpoints. A point interval (lo == hi) encodes a rational number and the
// defining polynomial is linear.
class AlgebraicNumber {
 public:
  // Canonicalizes poly (square-free part) and verifies the interval isolates
  // exactly one real root. Throws invalid_input otherwise.
  AlgebraicNumber(IntPoly poly, Rat lo, Rat hi);
  static AlgebraicNumber from_rational(const Rat& x);

  const IntPoly& defining_poly() const { return poly_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  bool is_rational() const { return lo_ == hi_; }
  Rat rational_value() const;  // requires is_rational()
  int degree() const { return poly_.degree(); }
  Rat width() const { return hi_ - lo_; }

  // Same defining polynomial, interval width <= 2^-k, new interval inside old.
  AlgebraicNumber refined(long k) const;
  // Dyadic point within 2^-k of the number.
  Dyadic approx(long k) const;

  int sgn() const;
  bool contains(const Rat& x) const { return lo_ <= x && x <= hi_; }

  // The number scale*this (scale != 0) and this + shift, exact.
  AlgebraicNumber scaled(const Rat& scale) const;
  AlgebraicNumber shifted(const Rat& shift) const;

  // Exact equality as real numbers.
  static bool equal(const AlgebraicNumber& a, const AlgebraicNumber& b);

  // The same number with short dyadic interval endpoints of width
  // <= 2^-width_bits (for presentation; the certified interval endpoints of a
  // freshly reconstructed number can be very long rationals).
  AlgebraicNumber tidied(long width_bits) const;

  std::string to_string() const;

 private:
  AlgebraicNumber() = default;
  void bisect_once();
  IntPoly poly_;
  Rat lo_, hi_;
};

// Free-function operations on integer polynomials.
Int content(const IntPoly& p);
// (height, certified rational upper bound on the Euclidean length)
std::pair<Int, Rat> height_and_length(const IntPoly& p);
IntPoly square_free_part(const IntPoly& p);
IntPoly shift_poly(const IntPoly& p, const Rat& c);
IntPoly scale_poly_arg(const IntPoly& p, const Rat& c);

// One AlgebraicNumber per distinct real root, ordered increasing, pairwise
// disjoint intervals, all defined by square_free_part(p).
std::vector<AlgebraicNumber> isolate_real_roots(const IntPoly& p);
AlgebraicNumber refine(const AlgebraicNumber& a, long k);

struct RootBounds {
  Rat lower;       // (2*height)^-1: every nonzero root has |root| >= lower
  Rat upper;       // 2*height: every root has |root| <= upper
  Rat separation;  // exact rational lower bound on distinct-root distance
};
RootBounds univariate_root_bounds(const IntPoly& p);

}  // namespace sgsolve
