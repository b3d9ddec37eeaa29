#include "sgsolve/degree_lab.hpp"

namespace sgsolve {

StochasticGame diagonal_game(const DiagonalSpec& spec) {
  int m = static_cast<int>(spec.alphas.size());
  if (m < 1) throw invalid_input("diagonal_game: needs at least one alpha");
  for (const Rat& a : spec.alphas)
    if (sign(a) <= 0) throw invalid_input("diagonal_game: alphas must be positive");
  if (!(sign(spec.beta) >= 0 && spec.beta < 1))
    throw invalid_input("diagonal_game: beta must be in [0,1)");
  StochasticGame g = StochasticGame::empty(GameVariant::shapley, 1);
  g.resize_position(0, m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Cell& c = g.cell(0, i, j);
      if (i == j) {
        c.a = spec.alphas[i];
        c.p[0] = spec.beta;
        c.s = Rat(1) - spec.beta;
      } else {
        c.a = 0;
        c.s = 1;
      }
    }
  return g;
}

Rat elementary_symmetric(const std::vector<Rat>& values, int k) {
  int n = static_cast<int>(values.size());
  if (k < 0 || k > n) throw invalid_input("elementary_symmetric: k out of range");
  // e[j] after processing a prefix = E_j(prefix)
  std::vector<Rat> e(k + 1, Rat(0));
  e[0] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = std::min(k, i + 1); j >= 1; --j) e[j] += values[i] * e[j - 1];
  return e[k];
}

IntPoly F_m_polynomial(const std::vector<Rat>& alphas, const Rat& c) {
  if (!(c > 1)) throw invalid_input("F_m_polynomial: c must be > 1");
  for (const Rat& a : alphas)
    if (sign(a) <= 0) throw invalid_input("F_m_polynomial: alphas must be positive");
  int m = static_cast<int>(alphas.size());
  std::vector<Rat> coeffs(m + 1, Rat(0));
  for (int k = 0; k <= m; ++k) {
    Rat ck = Rat(1) - c * k;
    Rat cpow(1);
    for (int t = 0; t < m - k; ++t) cpow *= c;
    coeffs[k] = elementary_symmetric(alphas, m - k) * ck * cpow;
  }
  RatPoly f(std::move(coeffs));
  auto [ip, den] = f.clear_denominators();
  (void)den;
  return ip.primitive_part();
}

IntPoly cyclotomic(int m) {
  if (m < 1) throw invalid_input("cyclotomic: m >= 1 required");
  IntPoly num = IntPoly::x_pow_minus_one(m);
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    auto q = IntPoly::divide_exact(num, cyclotomic(d));
    if (!q) throw std::logic_error("cyclotomic: division failed");
    num = *q;
  }
  return num;
}

IntPoly S_k_polynomial(int m, int k) {
  if (k < 1 || k > m) throw invalid_input("S_k_polynomial: k out of range");
  // DP over E_k of (1, x, ..., x^{m-1}) with polynomial coefficients.
  std::vector<IntPoly> e(k + 1);
  e[0] = IntPoly::constant(Int(1));
  for (int i = 0; i < m; ++i) {
    IntPoly xi = IntPoly::monomial(Int(1), i);  // x^i
    for (int j = std::min(k, i + 1); j >= 1; --j) e[j] = e[j] + xi * e[j - 1];
  }
  return e[k];
}

StochasticGame composite_game(const std::vector<StochasticGame>& singles,
                              const std::vector<long>& weights) {
  int N = static_cast<int>(singles.size());
  if (N < 1) throw invalid_input("composite_game: needs at least one single");
  if (weights.size() != singles.size())
    throw invalid_input("composite_game: weights/singles length mismatch");
  long K = 0;
  for (long w : weights) {
    if (w < 1) throw invalid_input("composite_game: weights must be positive integers");
    K += w;
  }
  for (const StochasticGame& s : singles) {
    if (s.variant != GameVariant::shapley || s.N != 1)
      throw invalid_input("composite_game: singles must be 1-position shapley games");
  }
  StochasticGame g = StochasticGame::empty(GameVariant::shapley, N + 1);
  for (int k = 0; k < N; ++k) {
    g.resize_position(k, singles[k].m[0], singles[k].n[0]);
    for (int i = 0; i < singles[k].m[0]; ++i)
      for (int j = 0; j < singles[k].n[0]; ++j) {
        const Cell& c = singles[k].cell(0, i, j);
        Cell& o = g.cell(k, i, j);
        o.a = c.a;
        o.s = c.s;
        o.p[k] = c.p[0];
      }
  }
  g.resize_position(N, 1, 1);
  Cell& dummy = g.cell(N, 0, 0);
  dummy.a = 0;
  dummy.s = Rat(1, 2);
  for (int k = 0; k < N; ++k) {
    dummy.p[k] = Rat(weights[k], 2 * K);
    dummy.p[k].canonicalize();
  }
  validate(g);
  return g;
}

DiagonalSpec specialized_diagonal(int m, long x, const Rat& c) {
  if (m < 1 || x < 1) throw invalid_input("specialized_diagonal: m, x >= 1 required");
  if (!(c > 1)) throw invalid_input("specialized_diagonal: c must be > 1");
  // The game takes the squares (x^(i-1))^2 as its diagonal payoffs.
  DiagonalSpec spec;
  for (int i = 0; i < m; ++i) spec.alphas.push_back(Rat(pow_int(Int(x), 2 * i)));
  spec.beta = Rat(1) / c;
  return spec;
}

}  // namespace sgsolve
