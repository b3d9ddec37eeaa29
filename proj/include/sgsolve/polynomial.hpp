#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgsolve/numeric.hpp"

namespace sgsolve {

// Dense univariate polynomial over Z, coefficient of x^k at index k.
// The zero polynomial is the empty coefficient vector.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }
  static IntPoly constant(const Int& c) { return IntPoly({c}); }
  static IntPoly monomial(const Int& c, int deg);
  // x^n - 1
  static IntPoly x_pow_minus_one(int n);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& coeff(int k) const;
  const Int& leading() const;

  IntPoly operator-() const;
  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly mul_scalar(const Int& k) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  IntPoly derivative() const;

  // gcd of coefficients (positive). Errors on the zero polynomial.
  Int content() const;
  // p / content(p), sign normalized so the leading coefficient is positive.
  IntPoly primitive_part() const;
  // max |coefficient|. Errors on the zero polynomial.
  Int height() const;
  // Exact rational upper bound on the Euclidean norm of the coefficient
  // vector: ceil(sqrt(sum c_k^2)).
  Int length_bound() const;

  // Exact division, or nullopt when b does not divide a over Q (result is in
  // Z[x] up to rational scaling; returns the quotient when a = q*b exactly).
  static std::optional<IntPoly> divide_exact(const IntPoly& a, const IntPoly& b);
  // Primitive gcd (positive leading coefficient).
  static IntPoly gcd(const IntPoly& a, const IntPoly& b);
  // primitive part of p / gcd(p, p'); square-free, positive leading coeff.
  IntPoly square_free_part() const;

  // Exact evaluation.
  Rat eval(const Rat& x) const;
  // Sign of p(x) without building intermediate rationals.
  int sign_at(const Rat& x) const;
  // Interval enclosure of p over [lo, hi] (entrywise interval arithmetic in
  // the power basis; a valid but not tight enclosure).
  std::pair<Rat, Rat> eval_interval(const Rat& lo, const Rat& hi) const;

  // Integer polynomial proportional to p(x + c), primitive, positive leading
  // coefficient (roots are shifted by -c).
  IntPoly shift_arg(const Rat& c) const;
  // Primitive integer polynomial whose roots are {c*w : p(w) = 0}; c != 0.
  IntPoly scale_arg(const Rat& c) const;

  // Sturm root counting over (lo, hi]; requires nonzero p.
  static std::vector<IntPoly> sturm_sequence(const IntPoly& p);
  static int sign_variations_at(const std::vector<IntPoly>& seq, const Rat& x);
  // Number of distinct real roots in (lo, hi].
  static int count_roots(const std::vector<IntPoly>& seq, const Rat& lo, const Rat& hi);

  // Cauchy-style bound: every real root lies in [-B, B], B = 1 + height/|lc|
  // rounded up to a power of two.
  Rat root_enclosure_bound() const;

  std::string to_string() const;  // "[c0, c1, ...]" constant term first

 private:
  void trim();
  std::vector<Int> c_;
};

// Polynomial with rational coefficients; only what the parameterized-game
// machinery needs (determinant expansion of matrices with entries affine in
// one variable).
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static RatPoly constant(const Rat& c) { return RatPoly({c}); }
  static RatPoly affine(const Rat& c0, const Rat& c1) { return RatPoly({c0, c1}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rat>& coeffs() const { return c_; }

  RatPoly operator-() const;
  friend RatPoly operator+(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);

  Rat eval(const Rat& x) const;
  // Clears denominators: returns (integer polynomial, common denominator d)
  // with this = poly / d.
  std::pair<IntPoly, Int> clear_denominators() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

}  // namespace sgsolve
