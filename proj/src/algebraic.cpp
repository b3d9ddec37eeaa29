#include "sgsolve/algebraic.hpp"

#include <sstream>

namespace sgsolve {

namespace {
// Linear primitive polynomial with root x.
IntPoly linear_for(const Rat& x) {
  return IntPoly({-x.get_num(), Int(x.get_den())});
}
}  // namespace

AlgebraicNumber::AlgebraicNumber(IntPoly poly, Rat lo, Rat hi) {
  if (poly.is_zero() || poly.degree() < 1)
    throw invalid_input("defining polynomial must have degree >= 1");
  if (lo > hi) throw invalid_input("isolating interval has lo > hi");
  poly_ = poly.square_free_part();
  lo_ = std::move(lo);
  hi_ = std::move(hi);
  if (lo_ == hi_) {
    if (poly_.sign_at(lo_) != 0)
      throw invalid_input("point interval is not a root of the polynomial");
    poly_ = linear_for(lo_);
    return;
  }
  // Normalize a rational root at an endpoint or detected by a linear factor.
  if (poly_.sign_at(lo_) == 0) {
    poly_ = linear_for(lo_);
    hi_ = lo_;
    return;
  }
  if (poly_.sign_at(hi_) == 0) {
    poly_ = linear_for(hi_);
    lo_ = hi_;
    return;
  }
  auto seq = IntPoly::sturm_sequence(poly_);
  int n = IntPoly::count_roots(seq, lo_, hi_);
  if (n != 1) throw invalid_input("interval does not isolate exactly one root");
  if (poly_.degree() == 1) {
    Rat root = Rat(-poly_.coeff(0)) / Rat(poly_.coeff(1));
    root.canonicalize();
    lo_ = hi_ = root;
    poly_ = linear_for(root);
  }
}

AlgebraicNumber AlgebraicNumber::from_rational(const Rat& x) {
  AlgebraicNumber a;
  a.poly_ = linear_for(x);
  a.lo_ = a.hi_ = x;
  return a;
}

Rat AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw invalid_input("not a rational number");
  return lo_;
}

void AlgebraicNumber::bisect_once() {
  Rat mid = (lo_ + hi_) / 2;
  int sm = poly_.sign_at(mid);
  if (sm == 0) {
    poly_ = linear_for(mid);
    lo_ = hi_ = mid;
    return;
  }
  if (poly_.sign_at(lo_) == sm)
    lo_ = mid;
  else
    hi_ = mid;
}

AlgebraicNumber AlgebraicNumber::refined(long k) const {
  AlgebraicNumber a = *this;
  Rat target = pow2_rat(-k);
  while (!a.is_rational() && a.hi_ - a.lo_ > target) a.bisect_once();
  return a;
}

Dyadic AlgebraicNumber::approx(long k) const {
  AlgebraicNumber a = refined(k + 1);
  Rat mid = (a.lo_ + a.hi_) / 2;
  return Dyadic::round_to_grid(mid, k + 1);
}

int AlgebraicNumber::sgn() const {
  if (is_rational()) return sign(lo_);
  if (sign(lo_) > 0) return 1;
  if (sign(hi_) < 0) return -1;
  // zero is rational; an interval-represented irrational root straddling 0
  // can be refined until the sign is determined
  AlgebraicNumber a = *this;
  while (sign(a.lo_) <= 0 && sign(a.hi_) >= 0) {
    a.bisect_once();
    if (a.is_rational()) return sign(a.lo_);
  }
  return sign(a.lo_) > 0 ? 1 : -1;
}

AlgebraicNumber AlgebraicNumber::scaled(const Rat& scale) const {
  if (sign(scale) == 0) throw invalid_input("scale must be nonzero");
  if (scale == 1) return *this;
  AlgebraicNumber r;
  r.poly_ = poly_.scale_arg(scale);
  Rat a = lo_ * scale, b = hi_ * scale;
  if (a > b) std::swap(a, b);
  r.lo_ = a;
  r.hi_ = b;
  return r;
}

AlgebraicNumber AlgebraicNumber::shifted(const Rat& shift) const {
  if (sign(shift) == 0) return *this;
  AlgebraicNumber r;
  r.poly_ = poly_.shift_arg(-shift);  // q(x) = p(x - shift): roots move by +shift
  r.lo_ = lo_ + shift;
  r.hi_ = hi_ + shift;
  return r;
}

bool AlgebraicNumber::equal(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) return a.lo_ == b.lo_;
  if (a.hi_ < b.lo_ || b.hi_ < a.lo_) return false;
  // Roots of distinct squarefree polynomials coincide only on a common factor.
  IntPoly g = (a.poly_ == b.poly_) ? a.poly_ : IntPoly::gcd(a.poly_, b.poly_);
  if (g.degree() < 1) return false;
  // Refine both below the root-separation bound of the product polynomial;
  // then equality is interval intersection.
  IntPoly prod = a.poly_ == b.poly_ ? a.poly_ : a.poly_ * b.poly_;
  RootBounds rb = univariate_root_bounds(prod);
  Rat quarter_sep = rb.separation / 4;
  long k = 2;
  while (pow2_rat(-k) > quarter_sep) ++k;
  AlgebraicNumber ra = a.refined(k), rbn = b.refined(k);
  return !(ra.hi_ < rbn.lo_ || rbn.hi_ < ra.lo_);
}

AlgebraicNumber AlgebraicNumber::tidied(long width_bits) const {
  if (is_rational()) return *this;
  for (const AlgebraicNumber& cand : isolate_real_roots(poly_))
    if (equal(cand, *this)) return cand.refined(width_bits);
  throw std::logic_error("tidied: root not found by re-isolation");
}

std::string AlgebraicNumber::to_string() const {
  std::ostringstream os;
  os << poly_.to_string() << " @ [" << rat_to_string(lo_) << ", " << rat_to_string(hi_) << "]";
  return os.str();
}

Int content(const IntPoly& p) {
  if (p.is_zero()) throw invalid_input("content of zero polynomial");
  return p.content();
}

std::pair<Int, Rat> height_and_length(const IntPoly& p) {
  if (p.is_zero()) throw invalid_input("height of zero polynomial");
  return {p.height(), Rat(p.length_bound())};
}

IntPoly square_free_part(const IntPoly& p) {
  if (p.is_zero()) throw invalid_input("square-free part of zero polynomial");
  return p.square_free_part();
}

IntPoly shift_poly(const IntPoly& p, const Rat& c) {
  if (p.is_zero()) throw invalid_input("shift of zero polynomial");
  return p.shift_arg(c);
}

IntPoly scale_poly_arg(const IntPoly& p, const Rat& c) { return p.scale_arg(c); }

std::vector<AlgebraicNumber> isolate_real_roots(const IntPoly& p) {
  if (p.is_zero()) throw invalid_input("cannot isolate roots of zero polynomial");
  IntPoly q = p.square_free_part();
  std::vector<AlgebraicNumber> roots;
  if (q.degree() < 1) return roots;
  if (q.degree() == 1) {
    Rat root = Rat(-q.coeff(0)) / Rat(q.coeff(1));
    root.canonicalize();
    roots.push_back(AlgebraicNumber::from_rational(root));
    return roots;
  }
  auto seq = IntPoly::sturm_sequence(q);
  Rat bound = q.root_enclosure_bound();
  // Recursive bisection over (lo, hi]; endpoints handled explicitly so the
  // half-open Sturm counts stay consistent.
  struct Frame {
    Rat lo, hi;
    int count;
  };
  std::vector<Frame> stack;
  Rat lo = -bound, hi = bound;
  // The enclosure bound is strict, so +-bound are never roots.
  int total = IntPoly::count_roots(seq, lo, hi);
  if (total > 0) stack.push_back({lo, hi, total});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.count == 1) {
      // Ensure the left endpoint is not a root (half-open count excludes it).
      roots.push_back(AlgebraicNumber(q, f.lo, f.hi));
      continue;
    }
    Rat mid = (f.lo + f.hi) / 2;
    if (q.sign_at(mid) == 0) {
      // Exact root at the midpoint; record and split strictly around it.
      roots.push_back(AlgebraicNumber(q, mid, mid));
      // Left of mid: shrink right endpoint until it is not a root: use mid
      // directly, count over (lo, mid] minus the root at mid.
      int cl = IntPoly::count_roots(seq, f.lo, mid) - 1;
      int cr = f.count - 1 - cl;
      if (cl > 0) {
        // Find a non-root right endpoint between the largest left root and mid.
        Rat eps = (mid - f.lo) / 4;
        Rat r = mid - eps;
        while (q.sign_at(r) == 0 || IntPoly::count_roots(seq, f.lo, r) != cl) {
          eps /= 2;
          r = mid - eps;
        }
        stack.push_back({f.lo, r, cl});
      }
      if (cr > 0) {
        Rat eps = (f.hi - mid) / 4;
        Rat l = mid + eps;
        while (q.sign_at(l) == 0 || IntPoly::count_roots(seq, l, f.hi) != cr) {
          eps /= 2;
          l = mid + eps;
        }
        stack.push_back({l, f.hi, cr});
      }
      continue;
    }
    int cl = IntPoly::count_roots(seq, f.lo, mid);
    int cr = f.count - cl;
    if (cl > 0) stack.push_back({f.lo, mid, cl});
    if (cr > 0) stack.push_back({mid, f.hi, cr});
  }
  std::sort(roots.begin(), roots.end(), [](const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return a.lo() < b.lo() || (a.lo() == b.lo() && a.hi() < b.hi());
  });
  // Shrink any pair of intervals touching at a shared (non-root) endpoint.
  for (size_t i = 0; i + 1 < roots.size(); ++i) {
    long kk = 2;
    while (roots[i].hi() >= roots[i + 1].lo()) {
      roots[i] = roots[i].refined(kk);
      roots[i + 1] = roots[i + 1].refined(kk);
      ++kk;
    }
  }
  return roots;
}

AlgebraicNumber refine(const AlgebraicNumber& a, long k) { return a.refined(k); }

RootBounds univariate_root_bounds(const IntPoly& p) {
  if (p.is_zero() || p.degree() < 1)
    throw invalid_input("root bounds need a polynomial of degree >= 1");
  Int h = p.height();
  RootBounds rb;
  rb.upper = Rat(2 * h);
  rb.lower = Rat(1, 2 * h);
  rb.lower.canonicalize();
  // sep >= d^-((d+2)/2) * |p|_2^(1-d); under-approximate exactly with the
  // integer length bound and a ceiling on the power of d.
  long d = p.degree();
  Int len = p.length_bound();
  // d^((d+2)/2) <= d^ceil((d+2)/2)
  Int dpow = pow_int(Int(d), static_cast<unsigned long>((d + 2 + 1) / 2));
  Int lpow = pow_int(len, static_cast<unsigned long>(d - 1));
  rb.separation = Rat(1) / (Rat(dpow) * Rat(lpow));
  rb.separation.canonicalize();
  return rb;
}

}  // namespace sgsolve
