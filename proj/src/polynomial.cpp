#include "sgsolve/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace sgsolve {

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::monomial(const Int& c, int deg) {
  if (c == 0) return IntPoly();
  std::vector<Int> v(deg + 1, Int(0));
  v[deg] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::x_pow_minus_one(int n) {
  std::vector<Int> v(n + 1, Int(0));
  v[0] = -1;
  v[n] = 1;
  return IntPoly(std::move(v));
}

const Int& IntPoly::coeff(int k) const {
  static const Int zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

const Int& IntPoly::leading() const {
  if (is_zero()) throw invalid_input("leading coefficient of zero polynomial");
  return c_.back();
}

IntPoly IntPoly::operator-() const {
  std::vector<Int> v(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
  return IntPoly(std::move(v));
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> v(std::max(a.c_.size(), b.c_.size()), Int(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<Int> v(a.c_.size() + b.c_.size() - 1, Int(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return IntPoly(std::move(v));
}

IntPoly IntPoly::mul_scalar(const Int& k) const {
  if (k == 0) return IntPoly();
  std::vector<Int> v(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * k;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::derivative() const {
  if (degree() < 1) return IntPoly();
  std::vector<Int> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Int(static_cast<long>(i));
  return IntPoly(std::move(v));
}

Int IntPoly::content() const {
  if (is_zero()) throw invalid_input("content of zero polynomial");
  Int g(0);
  for (const Int& c : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  Int g = content();
  if (sign(leading()) < 0) g = -g;
  std::vector<Int> v(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) mpz_divexact(v[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}

Int IntPoly::height() const {
  if (is_zero()) throw invalid_input("height of zero polynomial");
  Int h(0);
  for (const Int& c : c_) {
    Int a = ::abs(c);
    if (a > h) h = a;
  }
  return h;
}

Int IntPoly::length_bound() const {
  if (is_zero()) throw invalid_input("length of zero polynomial");
  Int s(0);
  for (const Int& c : c_) s += c * c;
  Int r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  if (r * r < s) r += 1;
  return r;
}

std::optional<IntPoly> IntPoly::divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw invalid_input("division by zero polynomial");
  if (a.is_zero()) return IntPoly();
  if (a.degree() < b.degree()) return std::nullopt;
  // Work over Q with synthetic division.
  std::vector<Rat> rem(a.c_.size());
  for (size_t i = 0; i < a.c_.size(); ++i) rem[i] = Rat(a.c_[i]);
  int db = b.degree();
  Rat lb = Rat(b.leading());
  int dq = a.degree() - db;
  std::vector<Rat> q(dq + 1);
  for (int k = dq; k >= 0; --k) {
    Rat t = rem[k + db] / lb;
    q[k] = t;
    if (sign(t) != 0)
      for (int i = 0; i <= db; ++i) rem[k + i] -= t * Rat(b.c_[i]);
  }
  for (const Rat& r : rem)
    if (sign(r) != 0) return std::nullopt;
  // The quotient must have integer coefficients for exact Z[x] division.
  std::vector<Int> qi(q.size());
  for (size_t i = 0; i < q.size(); ++i) {
    if (q[i].get_den() != 1) return std::nullopt;
    qi[i] = q[i].get_num();
  }
  return IntPoly(std::move(qi));
}

namespace {
// Pseudo-remainder prem(a, b) with multiplier lc(b)^(deg a - deg b + 1).
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
  int db = b.degree();
  const Int& lb = b.leading();
  while (!a.is_zero() && a.degree() >= db) {
    int k = a.degree() - db;
    Int la = a.leading();
    IntPoly t = a.mul_scalar(lb) - (b * IntPoly::monomial(la, k));
    a = std::move(t);
  }
  return a;
}

// Pseudo-remainder with a guaranteed positive multiplier lc(b)^2 per
// reduction step, so sign(result) = sign of the true remainder of a/b.
IntPoly pseudo_rem_pos(IntPoly a, const IntPoly& b) {
  int db = b.degree();
  const Int& lb = b.leading();
  Int lb2 = lb * lb;
  while (!a.is_zero() && a.degree() >= db) {
    int k = a.degree() - db;
    Int la = a.leading();
    IntPoly t = a.mul_scalar(lb2) - (b * IntPoly::monomial(la * lb, k));
    a = std::move(t);
  }
  return a;
}

// Divide by the (positive) content, keeping the sign of the polynomial.
IntPoly strip_content(const IntPoly& p) {
  if (p.is_zero()) return p;
  Int g = p.content();
  std::vector<Int> v(p.coeffs().size());
  for (size_t i = 0; i < v.size(); ++i)
    mpz_divexact(v[i].get_mpz_t(), p.coeffs()[i].get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(v));
}
}  // namespace

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() && b.is_zero()) throw invalid_input("gcd of zero polynomials");
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  IntPoly f = a.primitive_part(), g = b.primitive_part();
  if (f.degree() < g.degree()) std::swap(f, g);
  // Primitive PRS.
  while (!g.is_zero()) {
    IntPoly r = pseudo_rem(f, g);
    f = std::move(g);
    g = r.is_zero() ? IntPoly() : r.primitive_part();
  }
  return f.primitive_part();
}

IntPoly IntPoly::square_free_part() const {
  if (is_zero()) throw invalid_input("square-free part of zero polynomial");
  if (degree() == 0) return IntPoly::constant(Int(1));
  IntPoly g = gcd(*this, derivative());
  if (g.degree() == 0) return primitive_part();
  auto q = divide_exact(primitive_part(), g.primitive_part());
  if (!q) throw std::logic_error("square_free_part: gcd does not divide");
  return q->primitive_part();
}

Rat IntPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (int k = degree(); k >= 0; --k) acc = acc * x + Rat(c_[k]);
  return acc;
}

int IntPoly::sign_at(const Rat& x) const {
  if (is_zero()) return 0;
  // sum c_k num^k den^(d-k), Horner in the numerator scale.
  const Int& num = x.get_num();
  const Int& den = x.get_den();
  int d = degree();
  Int acc = c_[d];
  for (int k = d - 1; k >= 0; --k) acc = acc * num + c_[k] * pow_int(den, d - k);
  return sign(acc);
}

std::pair<Rat, Rat> IntPoly::eval_interval(const Rat& lo, const Rat& hi) const {
  if (lo > hi) throw invalid_input("eval_interval: lo > hi");
  Rat rlo(0), rhi(0);
  Rat plo(1), phi(1);  // interval for x^k
  for (size_t k = 0; k < c_.size(); ++k) {
    if (k > 0) {
      // [plo,phi] * [lo,hi]
      Rat cands[4] = {plo * lo, plo * hi, phi * lo, phi * hi};
      Rat nlo = cands[0], nhi = cands[0];
      for (int t = 1; t < 4; ++t) {
        if (cands[t] < nlo) nlo = cands[t];
        if (cands[t] > nhi) nhi = cands[t];
      }
      plo = nlo;
      phi = nhi;
    }
    Rat c(c_[k]);
    if (sign(c) >= 0) {
      rlo += c * plo;
      rhi += c * phi;
    } else {
      rlo += c * phi;
      rhi += c * plo;
    }
  }
  return {rlo, rhi};
}

IntPoly IntPoly::shift_arg(const Rat& c) const {
  if (is_zero()) throw invalid_input("shift of zero polynomial");
  // q(x) = den^d * p((x*den + num)/den) = sum c_k (x*den + num)^k den^(d-k)
  const Int& num = c.get_num();
  const Int& den = c.get_den();
  int d = degree();
  IntPoly lin({num, den});  // x*den + num
  IntPoly acc = IntPoly::constant(c_[d]);
  for (int k = d - 1; k >= 0; --k) {
    acc = acc * lin + IntPoly::constant(c_[k] * pow_int(den, d - k));
  }
  return acc.primitive_part();
}

IntPoly IntPoly::scale_arg(const Rat& c) const {
  if (is_zero()) throw invalid_input("scale of zero polynomial");
  if (sign(c) == 0) throw invalid_input("scale_arg: factor must be nonzero");
  // roots {c*w}: q(x) = sum c_k x^k den^k num^(d-k)
  const Int& num = c.get_num();
  const Int& den = c.get_den();
  int d = degree();
  std::vector<Int> v(c_.size());
  for (int k = 0; k <= d; ++k) v[k] = c_[k] * pow_int(den, k) * pow_int(num, d - k);
  return IntPoly(std::move(v)).primitive_part();
}

std::vector<IntPoly> IntPoly::sturm_sequence(const IntPoly& p) {
  if (p.is_zero()) throw invalid_input("Sturm sequence of zero polynomial");
  std::vector<IntPoly> seq;
  seq.push_back(strip_content(p));
  if (p.degree() == 0) return seq;
  seq.push_back(strip_content(p.derivative()));
  while (!seq.back().is_zero() && seq.back().degree() > 0) {
    IntPoly r = pseudo_rem_pos(seq[seq.size() - 2], seq.back());
    if (r.is_zero()) break;
    seq.push_back(strip_content(-r));
  }
  return seq;
}

int IntPoly::sign_variations_at(const std::vector<IntPoly>& seq, const Rat& x) {
  int count = 0, prev = 0;
  for (const IntPoly& q : seq) {
    int s = q.is_zero() ? 0 : q.sign_at(x);
    if (s != 0) {
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
  }
  return count;
}

int IntPoly::count_roots(const std::vector<IntPoly>& seq, const Rat& lo, const Rat& hi) {
  if (lo > hi) throw invalid_input("count_roots: lo > hi");
  return sign_variations_at(seq, lo) - sign_variations_at(seq, hi);
}

Rat IntPoly::root_enclosure_bound() const {
  if (is_zero() || degree() < 1) throw invalid_input("root bound needs degree >= 1");
  Rat b = Rat(1) + Rat(height()) / Rat(::abs(leading()));
  long e = bitsize(Int(b.get_num())) - bitsize(Int(b.get_den())) + 1;
  if (e < 1) e = 1;
  return Rat(pow2(e));
}

std::string IntPoly::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i].get_str();
  }
  if (c_.empty()) os << "0";
  os << "]";
  return os.str();
}

void RatPoly::trim() {
  while (!c_.empty() && sign(c_.back()) == 0) c_.pop_back();
}

RatPoly RatPoly::operator-() const {
  std::vector<Rat> v(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
  return RatPoly(std::move(v));
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
  std::vector<Rat> v(std::max(a.c_.size(), b.c_.size()), Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return RatPoly(std::move(v));
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  if (a.is_zero() || b.is_zero()) return RatPoly();
  std::vector<Rat> v(a.c_.size() + b.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return RatPoly(std::move(v));
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc(0);
  for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
  return acc;
}

std::pair<IntPoly, Int> RatPoly::clear_denominators() const {
  Int l(1);
  for (const Rat& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Int> v(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) {
    Rat t = c_[i] * Rat(l);
    v[i] = t.get_num();  // denominator is 1 by construction
  }
  return {IntPoly(std::move(v)), l};
}

}  // namespace sgsolve
