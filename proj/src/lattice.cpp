#include "sgsolve/lattice.hpp"

#include <algorithm>

#include "sgsolve/algebraic.hpp"

namespace sgsolve {

long kll_precision(long d, const Int& H) {
  if (d < 1 || H < 1) throw invalid_input("kll_precision: need d >= 1 and H >= 1");
  auto [l1lo, l1hi] = log2_bounds(Rat(d + 1));
  auto [l2lo, l2hi] = log2_bounds(Rat(H));
  Rat dd(Int(d) * Int(d), Int(2));
  dd.canonicalize();
  Rat s = dd + Rat(Int(3) * d + 4) * l1hi + Rat(Int(2) * d) * l2hi;
  s.canonicalize();
  Int num = s.get_num(), den = s.get_den();
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (!q.fits_slong_p()) throw precision_exhausted("kll_precision overflows machine integer");
  return q.get_si();
}

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct LLLState {
  std::vector<std::vector<Int>> b;
  std::vector<std::vector<Int>> lambda;  // lambda[i][j], j < i
  std::vector<Int> d;                    // d[i] = Gram det of b[0..i]

  Int dd(int i) const { return i < 0 ? Int(1) : d[i]; }

  void init() {
    int n = static_cast<int>(b.size());
    lambda.assign(n, std::vector<Int>());
    d.assign(n, Int(0));
    for (int i = 0; i < n; ++i) {
      lambda[i].assign(i, Int(0));
      for (int j = 0; j <= i; ++j) {
        Int u = dot(b[i], b[j]);
        for (int k = 0; k < j; ++k) {
          Int t = d[k] * u - lambda[i][k] * lambda[j][k];
          mpz_divexact(u.get_mpz_t(), t.get_mpz_t(), dd(k - 1).get_mpz_t());
        }
        if (j < i)
          lambda[i][j] = u;
        else
          d[i] = u;
      }
      if (d[i] == 0) throw invalid_input("lattice_reduce: basis vectors are dependent");
    }
  }

  void red(int k, int l) {
    Int two_l = 2 * lambda[k][l];
    if (cmp(abs(two_l), d[l]) <= 0) return;
    // q = nearest integer to lambda[k][l]/d[l]
    Int num = two_l + d[l];
    Int den = 2 * d[l];
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    for (size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[l][c];
    lambda[k][l] -= q * d[l];
    for (int i = 0; i < l; ++i) lambda[k][i] -= q * lambda[l][i];
  }

  void swap_step(int k) {
    std::swap(b[k], b[k - 1]);
    for (int j = 0; j < k - 1; ++j) std::swap(lambda[k][j], lambda[k - 1][j]);
    Int lam = lambda[k][k - 1];
    Int Bv = dd(k - 2) * d[k] + lam * lam;
    mpz_divexact(Bv.get_mpz_t(), Bv.get_mpz_t(), d[k - 1].get_mpz_t());
    int n = static_cast<int>(b.size());
    for (int i = k + 1; i < n; ++i) {
      Int t = lambda[i][k];
      Int nl = d[k] * lambda[i][k - 1] - lam * t;
      mpz_divexact(nl.get_mpz_t(), nl.get_mpz_t(), d[k - 1].get_mpz_t());
      lambda[i][k] = nl;
      Int nl2 = Bv * t + lam * nl;
      mpz_divexact(nl2.get_mpz_t(), nl2.get_mpz_t(), d[k].get_mpz_t());
      lambda[i][k - 1] = nl2;
    }
    d[k - 1] = Bv;
  }
};

}  // namespace

std::vector<std::vector<Int>> lattice_reduce(std::vector<std::vector<Int>> basis, const Rat& delta) {
  if (basis.empty()) throw invalid_input("lattice_reduce: empty basis");
  size_t dim = basis[0].size();
  for (const auto& v : basis)
    if (v.size() != dim) throw invalid_input("lattice_reduce: ragged basis");
  if (!(delta > Rat(1, 4) && delta < 1)) throw invalid_input("lattice_reduce: delta out of (1/4, 1)");
  LLLState st;
  st.b = std::move(basis);
  st.init();
  const Int dp = delta.get_num();
  const Int dq = delta.get_den();
  int n = static_cast<int>(st.b.size());
  int k = 1;
  while (k < n) {
    st.red(k, k - 1);
    // Lovasz: swap when  d_k * d_{k-2} + lambda^2 < delta * d_{k-1}^2.
    Int lam = st.lambda[k][k - 1];
    Int lhs = dq * (st.d[k] * st.dd(k - 2) + lam * lam);
    Int rhs = dp * st.d[k - 1] * st.d[k - 1];
    if (lhs < rhs) {
      st.swap_step(k);
      k = std::max(1, k - 1);
    } else {
      for (int l = k - 2; l >= 0; --l) st.red(k, l);
      ++k;
    }
  }
  return st.b;
}

namespace {

// round(2^s * x^i) for dyadic x.
Int scaled_power(const Dyadic& x, int i, long s) {
  if (i == 0) return pow2(s);
  Int m = x.mantissa();
  Int p = pow_int(m, i);
  long e = s + x.exponent() * i;
  if (e >= 0) return p << static_cast<unsigned long>(e);
  // round to nearest, ties away from zero
  Int q, r;
  Int den = pow2(-e);
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t(), den.get_mpz_t());
  if (2 * r >= den) q += 1;
  return q;
}

struct CandidateCheck {
  bool ok = false;
  Rat root_lo, root_hi;
};

// Verify a candidate defining polynomial against the certified interval
// [approx - tol, approx + tol]: square-free, exactly one root inside, and a
// small certified value at the approximation point.
CandidateCheck verify_candidate(const IntPoly& q, const Dyadic& approx, const Rat& tol,
                                long d, const Int& H, long s) {
  CandidateCheck res;
  if (q.degree() < 1) return res;
  if (!(q.square_free_part() == q)) return res;
  Rat a = approx.to_rat();
  Rat lo = a - tol, hi = a + tol;
  // |q(approx)| <= (d+1) * H * 2^(-s + d*(1 + ceil(lg max(1,|approx|))))
  Rat qa = q.eval(a);
  long mag = 1;
  Rat absa = abs(a);
  if (absa > 1) mag = 1 + ceil_log2(Int(absa.get_num()) / Int(absa.get_den()) + 1);
  Rat bound = Rat(d + 1) * Rat(H) * pow2_rat(-s + d * mag);
  if (abs(qa) > bound) return res;
  if (q.sign_at(lo) == 0 || q.sign_at(hi) == 0) {
    // Rational root on the interval edge: accept only if it is the unique root.
    return res;
  }
  auto seq = IntPoly::sturm_sequence(q);
  if (IntPoly::count_roots(seq, lo, hi) != 1) return res;
  res.ok = true;
  res.root_lo = lo;
  res.root_hi = hi;
  return res;
}

IntPoly try_reconstruct(const ReconstructionRequest& req, long lattice_s, IntPoly* best) {
  const long d = req.degree_bound_d;
  // Verification always happens against the interval certified by the
  // caller's precision; only the lattice scale escalates.
  Rat tol = pow2_rat(-req.precision_s) / Rat(12 * d);
  for (long dp = 1; dp <= d; ++dp) {
    // Rows span the lattice of (2^s * u(approx) rounded, u_0..u_dp).
    int dim = static_cast<int>(dp) + 2;
    std::vector<std::vector<Int>> basis(dp + 1, std::vector<Int>(dim, Int(0)));
    for (long i = 0; i <= dp; ++i) {
      basis[i][0] = scaled_power(req.approx, static_cast<int>(i), lattice_s);
      basis[i][static_cast<size_t>(i) + 1] = 1;
    }
    std::vector<std::vector<Int>> red = lattice_reduce(std::move(basis));
    // Height ceiling: LLL's approximation factor over the true minimal vector.
    Int ceiling = req.height_bound_H * pow2((dp + 1) / 2 + 2) * Int(dp + 1);
    for (const auto& vec : red) {
      std::vector<Int> coeffs(vec.begin() + 1, vec.end());
      IntPoly cand(std::move(coeffs));
      if (cand.is_zero() || cand.degree() < 1) continue;
      cand = cand.primitive_part();
      if (cand.height() > ceiling) continue;
      auto chk =
          verify_candidate(cand, req.approx, tol, d, req.height_bound_H, req.precision_s);
      if (chk.ok) return cand;
      if (best->is_zero()) *best = cand;
    }
  }
  return IntPoly();
}

}  // namespace

IntPoly reconstruct_min_poly(const ReconstructionRequest& req) {
  if (req.degree_bound_d < 1 || req.height_bound_H < 1)
    throw invalid_input("reconstruct_min_poly: need d >= 1, H >= 1");
  if (req.precision_s < kll_precision(req.degree_bound_d, req.height_bound_H))
    throw invalid_input("reconstruct_min_poly: precision below the KLL requirement");
  IntPoly best;
  IntPoly r = try_reconstruct(req, req.precision_s, &best);
  if (!r.is_zero()) return r;
  // One escalation with a tighter lattice scale before giving up.
  r = try_reconstruct(req, 2 * req.precision_s, &best);
  if (!r.is_zero()) return r;
  throw reconstruction_error("no candidate polynomial consistent with the approximation", best);
}

}  // namespace sgsolve
