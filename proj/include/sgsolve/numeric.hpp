#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgsolve {

using Int = mpz_class;
using Rat = mpq_class;

// Error taxonomy shared by all modules.
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class precision_exhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class verification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline int sign(const Int& x) { return sgn(x); }
inline int sign(const Rat& x) { return sgn(x); }

// Number of bits in |x|; bitsize(0) = 1 so that bitsize is always >= 1.
long bitsize(const Int& x);
// max(bitsize(num), bitsize(den)) -- the bitsize of a rational.
long bitsize(const Rat& x);

Int pow_int(const Int& base, unsigned long e);
inline Int pow2(long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}
// 2^e as an exact rational, e may be negative.
Rat pow2_rat(long e);

// ceil(lg z) for z >= 1, with lg 1 = 0.
long ceil_log2(const Int& z);

// Certified dyadic bounds on log2(x) for rational x > 0: the returned pair
// (lo, hi) satisfies lo <= log2 x <= hi and hi - lo <= 2^-frac_bits + 2^-frac_bits.
std::pair<Rat, Rat> log2_bounds(const Rat& x, int frac_bits = 24);

// "p/q" (or "p" when q=1) parsing and formatting; rejects q = 0.
Rat parse_rat(const std::string& s);
std::string rat_to_string(const Rat& x);

// A dyadic rational mantissa * 2^exponent with mantissa odd or zero.
class Dyadic {
 public:
  Dyadic() : mant_(0), exp_(0) {}
  explicit Dyadic(const Int& n) : mant_(n), exp_(0) { normalize(); }
  Dyadic(Int mant, long exp) : mant_(std::move(mant)), exp_(exp) { normalize(); }

  const Int& mantissa() const { return mant_; }
  long exponent() const { return exp_; }
  bool is_zero() const { return mant_ == 0; }
  int sgn() const { return sign(mant_); }

  Rat to_rat() const;
  // Exact conversion; fails unless the denominator is a power of two.
  static std::optional<Dyadic> from_rat_exact(const Rat& x);
  // Nearest multiple of 2^-j, ties rounded away from zero.
  static Dyadic round_to_grid(const Rat& x, long j);

  Dyadic operator-() const { return Dyadic(-mant_, exp_); }
  Dyadic abs() const { return Dyadic(::abs(mant_), exp_); }
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  // Halve (exact for dyadics).
  Dyadic half() const { return Dyadic(mant_, exp_ - 1); }

  int compare(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const { return mant_ == o.mant_ && exp_ == o.exp_; }
  bool operator!=(const Dyadic& o) const { return !(*this == o); }
  bool operator<(const Dyadic& o) const { return compare(o) < 0; }
  bool operator<=(const Dyadic& o) const { return compare(o) <= 0; }
  bool operator>(const Dyadic& o) const { return compare(o) > 0; }
  bool operator>=(const Dyadic& o) const { return compare(o) >= 0; }

  std::string to_string() const;  // as "p/q"

 private:
  void normalize();
  Int mant_;
  long exp_;
};

// Round a rational to the grid of multiples of 2^-j (nearest, ties away from 0).
Rat round_rat_to_grid(const Rat& x, long j);

}  // namespace sgsolve
