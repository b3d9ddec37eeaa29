#include "sgsolve/bounds.hpp"

#include <algorithm>

namespace sgsolve {

std::string provenance_name(BoundProvenance p) {
  switch (p) {
    case BoundProvenance::shapley_exact: return "shapley_exact";
    case BoundProvenance::everett_heuristic: return "everett_heuristic";
    case BoundProvenance::gillette_heuristic: return "gillette_heuristic";
  }
  return "?";
}

namespace {
long to_long_checked(const Int& x, const char* what) {
  if (!x.fits_slong_p())
    throw precision_exhausted(std::string(what) +
                              " overflows machine integers; arbitrary-precision mode required");
  return x.get_si();
}
}  // namespace

long sep_shapley_exponent(int N, int m, long L, long j) {
  if (N < 1 || m < 1 || L < 1 || j < 0) throw invalid_input("sep_shapley: need N,m,L >= 1, j >= 0");
  Int base = 2 * m + 5;
  Int e = Int(22) * m * m * Int(N) * N * L * pow_int(base, N - 1) +
          Int(j) * pow_int(base, N) + 1;
  return to_long_checked(e, "separation exponent");
}

Rat sep_shapley(int N, int m, long L, long j) {
  return pow2_rat(-sep_shapley_exponent(N, m, L, j));
}

long BoundProfile::sep_exponent_at(int level_N, long L, long j) const {
  int nn = std::max(level_N, 1);
  if (provenance == BoundProvenance::shapley_exact) return sep_shapley_exponent(nn, m, L, j);
  Int p = pow_int(Int(m), static_cast<unsigned long>(C) * nn * nn);
  Int e = Int(std::max(L, j)) * p;
  long r = to_long_checked(e, "separation exponent");
  return std::max(r, 1L);
}

BoundProfile shapley_bounds(int N, int m, long tau) {
  if (N < 1 || m < 1 || tau < 1) throw invalid_input("shapley_bounds: need N, m, tau >= 1");
  BoundProfile p;
  p.provenance = BoundProvenance::shapley_exact;
  p.N = N;
  p.m = m;
  p.tau = tau;
  Int base = 2 * m + 5;
  p.degree_bound = to_long_checked(pow_int(base, N), "degree bound");
  Int hb = Int(21) * m * m * Int(N) * N * tau * pow_int(base, N - 1);
  p.height_bitsize_bound = to_long_checked(hb, "height bitsize bound");
  return p;
}

namespace {
BoundProfile big_o_bounds(int N, int m, long tau, long C, BoundProvenance prov) {
  if (N < 1 || m < 1 || tau < 1 || C < 1)
    throw invalid_input("heuristic bounds: need N, m, tau, C >= 1");
  BoundProfile p;
  p.provenance = prov;
  p.N = N;
  p.m = m;
  p.tau = tau;
  p.C = C;
  Int deg = pow_int(Int(m), static_cast<unsigned long>(C) * N * N);
  p.degree_bound = std::max(1L, to_long_checked(deg, "degree bound"));
  Int hb = Int(tau) * deg;
  p.height_bitsize_bound = std::max(1L, to_long_checked(hb, "height bitsize bound"));
  return p;
}
}  // namespace

BoundProfile everett_bounds(int N, int m, long tau, long C) {
  return big_o_bounds(N, m, tau, C, BoundProvenance::everett_heuristic);
}

BoundProfile gillette_bounds(int N, int m, long tau, long C) {
  return big_o_bounds(N, m, tau, C, BoundProvenance::gillette_heuristic);
}

IsolatedRootBounds isolated_root_bounds(long d, long n, long m_polys, long tau) {
  if (d < 1 || n < 1 || m_polys < 1 || tau < 1)
    throw invalid_input("isolated_root_bounds: all arguments must be >= 1");
  IsolatedRootBounds r;
  Int base = 2 * d + 1;
  r.degree_bound = pow_int(base, n);
  long lg_dm = ceil_log2(Int(d) * m_polys);
  Int pn1 = pow_int(base, n - 1);
  r.coeff_bitsize = Int(2) * n * (Int(tau) + Int(4) * n * lg_dm) * pn1;
  r.root_lower_exponent = Int(2) * n * (Int(tau) + Int(2) * n * lg_dm) * pn1;
  Int p2n1 = pow_int(base, 2 * n - 1);
  // the -(1/2) lg n correction rounded up to the next integer
  long half_lg_n = (ceil_log2(Int(n)) + 1) / 2;
  r.separation_exponent = Int(3) * n * (Int(tau) + Int(2) * n * lg_dm) * p2n1 + half_lg_n;
  return r;
}

std::pair<long, long> convert_bounds(long d, long tau) {
  if (d < 1 || tau < 1) throw invalid_input("convert_bounds: need d, tau >= 1");
  Int deg = Int(2) * d;
  Int bits = Int(2) * d * tau + Int(7) * d * ceil_log2(Int(d));
  return {to_long_checked(deg, "degree"), to_long_checked(bits, "bitsize")};
}

}  // namespace sgsolve
