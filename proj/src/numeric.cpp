#include "sgsolve/numeric.hpp"

namespace sgsolve {

long bitsize(const Int& x) {
  if (x == 0) return 1;
  return static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

long bitsize(const Rat& x) {
  return std::max(bitsize(Int(x.get_num())), bitsize(Int(x.get_den())));
}

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow2_rat(long e) {
  Rat r;
  if (e >= 0) {
    r = Rat(pow2(e));
  } else {
    r = Rat(1, pow2(-e));
  }
  r.canonicalize();
  return r;
}

long ceil_log2(const Int& z) {
  if (z <= 0) throw invalid_input("ceil_log2: argument must be >= 1");
  if (z == 1) return 0;
  Int zm = z - 1;
  return bitsize(zm);
}

std::pair<Rat, Rat> log2_bounds(const Rat& x, int frac_bits) {
  if (sign(x) <= 0) throw invalid_input("log2_bounds: argument must be > 0");
  if (x == 1) return {Rat(0), Rat(0)};
  if (x < 1) {
    auto [lo, hi] = log2_bounds(Rat(1) / x, frac_bits);
    return {-hi, -lo};
  }
  // Integer part: e with 2^e <= x < 2^(e+1).
  long e = bitsize(Int(x.get_num())) - bitsize(Int(x.get_den()));
  Rat p2 = pow2_rat(e);
  if (x < p2) {
    e -= 1;
    p2 = pow2_rat(e);
  } else if (x >= pow2_rat(e + 1)) {
    e += 1;
    p2 = pow2_rat(e);
  }
  // y in [1,2); extract frac_bits bits of log2 y by squaring, with y kept as a
  // truncated dyadic so sizes stay bounded. ylo underestimates, yhi overestimates.
  const long work_bits = frac_bits + 48;
  Rat y = x / p2;
  // lower bound pass
  Int lo_bits = 0, hi_bits = 0;
  {
    // ylo = y truncated down
    Int m = (y.get_num() * pow2(work_bits)) / y.get_den();  // floor
    Int top = pow2(work_bits + 1);
    for (int i = 0; i < frac_bits; ++i) {
      m = (m * m) >> work_bits;  // floor of square
      lo_bits <<= 1;
      if (m >= top) {
        lo_bits += 1;
        m >>= 1;
      }
    }
  }
  {
    // yhi = y rounded up
    Int m = (y.get_num() * pow2(work_bits) + y.get_den() - 1) / y.get_den();  // ceil
    Int top = pow2(work_bits + 1);
    for (int i = 0; i < frac_bits; ++i) {
      Int sq = m * m;
      m = sq >> work_bits;
      if ((m << work_bits) != sq) m += 1;  // ceil of square
      hi_bits <<= 1;
      if (m >= top) {
        hi_bits += 1;
        m = (m + 1) >> 1;
      }
    }
  }
  Rat frac_lo(lo_bits, pow2(frac_bits));
  Rat frac_hi(hi_bits + 1, pow2(frac_bits));  // +1 covers truncation slack
  frac_lo.canonicalize();
  frac_hi.canonicalize();
  Rat lo = Rat(e) + frac_lo;
  Rat hi = Rat(e) + frac_hi;
  if (hi > Rat(e) + 1) hi = Rat(e) + 1;
  return {lo, hi};
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw invalid_input("empty rational");
  for (char c : s) {
    if (!(c == '-' || c == '+' || c == '/' || (c >= '0' && c <= '9')))
      throw invalid_input("malformed rational '" + s + "'");
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    throw invalid_input("malformed rational '" + s + "'");
  if (r.get_den() == 0) throw invalid_input("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

void Dyadic::normalize() {
  if (mant_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned long tz = mpz_scan1(mant_.get_mpz_t(), 0);
  if (tz > 0) {
    mant_ >>= tz;
    exp_ += static_cast<long>(tz);
  }
}

Rat Dyadic::to_rat() const {
  Rat r(mant_);
  if (exp_ >= 0) {
    r *= Rat(pow2(exp_));
  } else {
    r /= Rat(pow2(-exp_));
  }
  r.canonicalize();
  return r;
}

std::optional<Dyadic> Dyadic::from_rat_exact(const Rat& x) {
  Int den = x.get_den();
  if (den == 1) return Dyadic(Int(x.get_num()), 0);
  unsigned long tz = mpz_scan1(den.get_mpz_t(), 0);
  if ((den >> tz) != 1) return std::nullopt;
  return Dyadic(Int(x.get_num()), -static_cast<long>(tz));
}

Dyadic Dyadic::round_to_grid(const Rat& x, long j) {
  // nearest n with |x*2^j - n| <= 1/2, ties away from zero
  Int num = x.get_num(), den = x.get_den();
  if (j >= 0)
    num <<= j;
  else
    den <<= -j;
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  // x*2^j = q + r/den with 0 <= r < den
  Int twice = 2 * r;
  if (twice > den || (twice == den && sign(num) >= 0)) q += 1;
  return Dyadic(q, -j);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long e = std::min(a.exp_, b.exp_);
  Int m = (a.mant_ << static_cast<unsigned long>(a.exp_ - e)) +
          (b.mant_ << static_cast<unsigned long>(b.exp_ - e));
  return Dyadic(m, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
}

int Dyadic::compare(const Dyadic& o) const {
  int sa = sgn(), sb = o.sgn();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  long e = std::min(exp_, o.exp_);
  Int ma = mant_ << static_cast<unsigned long>(exp_ - e);
  Int mb = o.mant_ << static_cast<unsigned long>(o.exp_ - e);
  return cmp(ma, mb) < 0 ? -1 : (ma == mb ? 0 : 1);
}

std::string Dyadic::to_string() const { return rat_to_string(to_rat()); }

Rat round_rat_to_grid(const Rat& x, long j) { return Dyadic::round_to_grid(x, j).to_rat(); }

}  // namespace sgsolve
