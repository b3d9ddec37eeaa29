#include "sgsolve/param_game.hpp"

#include <algorithm>

namespace sgsolve {

int cmp_abs(const Frac& f, const Frac& g) {
  Int a = abs(f.num) * g.den;
  Int b = abs(g.num) * f.den;
  return cmp(a, b);
}

int cmp_abs_dyadic(const Frac& f, const Dyadic& d) {
  // |num/den| vs |mant| * 2^e
  Int a = abs(f.num);
  Int b = abs(d.mantissa()) * f.den;
  long e = d.exponent();
  if (e >= 0)
    b <<= static_cast<unsigned long>(e);
  else
    a <<= static_cast<unsigned long>(-e);
  return cmp(a, b);
}

namespace {

// Determinant of a small matrix with RatPoly entries by cofactor expansion.
RatPoly det_poly(const std::vector<std::vector<RatPoly>>& a) {
  size_t k = a.size();
  if (k == 1) return a[0][0];
  RatPoly acc;
  for (size_t j = 0; j < k; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<RatPoly>> minor(k - 1);
    for (size_t r = 1; r < k; ++r) {
      minor[r - 1].reserve(k - 1);
      for (size_t c = 0; c < k; ++c)
        if (c != j) minor[r - 1].push_back(a[r][c]);
    }
    RatPoly term = a[0][j] * det_poly(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Evaluate an integer polynomial at mant*2^e scaled by 2^(D*f) (f = max(-e,0))
// using shared powers of the mantissa.
Int eval_scaled(const IntPoly& p, const std::vector<Int>& powers, long f, int D) {
  if (p.is_zero()) return Int(0);
  Int acc(0);
  int d = p.degree();
  for (int k = 0; k <= d; ++k) {
    Int t = p.coeff(k) * powers[k];
    long sh = (D - k) * f;
    if (sh > 0) t <<= static_cast<unsigned long>(sh);
    acc += t;
  }
  return acc;
}

}  // namespace

ParamMatrixGame::ParamMatrixGame(std::vector<std::vector<Rat>> C, std::vector<std::vector<Rat>> D) {
  int m = static_cast<int>(C.size());
  int n = m > 0 ? static_cast<int>(C[0].size()) : 0;
  if (m < 1 || n < 1) throw invalid_input("ParamMatrixGame: empty matrix");
  if (D.size() != C.size()) throw invalid_input("ParamMatrixGame: shape mismatch");
  for (int i = 0; i < m; ++i)
    if (static_cast<int>(C[i].size()) != n || static_cast<int>(D[i].size()) != n)
      throw invalid_input("ParamMatrixGame: ragged matrix");
  if (m > n) {
    // Solve the transposed game so the basis machinery stays at size n+1.
    flipped_ = true;
    C_.assign(n, std::vector<Rat>(m));
    D_.assign(n, std::vector<Rat>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        C_[j][i] = -C[i][j];
        D_[j][i] = -D[i][j];
      }
    m_ = n;
    n_ = m;
  } else {
    C_ = std::move(C);
    D_ = std::move(D);
    m_ = m;
    n_ = n;
  }
}

MatrixGame ParamMatrixGame::instantiate(const Rat& w) const {
  MatrixGame g(m_, n_);
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j) g.at(i, j) = C_[i][j] + D_[i][j] * w;
  return g;
}

void ParamMatrixGame::rebuild(const Dyadic& w) {
  ++rebuilds_;
  GameSolution sol = solve(instantiate(w.to_rat()));
  if (!sol.basis) throw std::logic_error("ParamMatrixGame: solver returned no basis");
  Bundle b;
  b.basis = *sol.basis;

  // Split the basis into active column constraints and active x-constraints;
  // the equality (index n_+m_) is always present and ordered last.
  std::vector<int> bcols, brows;
  for (int t : b.basis) {
    if (t < n_)
      bcols.push_back(t);
    else if (t < n_ + m_)
      brows.push_back(t - n_);
  }

  // Rows of M_B(w) over variables (x_1..x_m, v).
  auto entry = [&](int i, int j) { return RatPoly::affine(C_[i][j], D_[i][j]); };
  std::vector<std::vector<RatPoly>> M(m_ + 1, std::vector<RatPoly>(m_ + 1));
  int r = 0;
  for (int j : bcols) {
    for (int i = 0; i < m_; ++i) M[r][i] = -entry(i, j);
    M[r][m_] = RatPoly::constant(Rat(1));
    ++r;
  }
  for (int i : brows) {
    for (int c = 0; c <= m_; ++c) M[r][c] = RatPoly();
    M[r][i] = RatPoly::constant(Rat(1));
    ++r;
  }
  for (int c = 0; c < m_; ++c) M[r][c] = RatPoly::constant(Rat(1));
  M[r][m_] = RatPoly();

  RatPoly den = det_poly(M);
  if (den.is_zero()) throw std::logic_error("ParamMatrixGame: singular optimal basis");

  // Cramer determinants: column i of M replaced by e_{m+1}; row-replacement
  // determinants for the dual system (transpose Cramer).
  std::vector<RatPoly> primal(m_ + 1);
  for (int i = 0; i <= m_; ++i) {
    auto Mi = M;
    for (int rr = 0; rr <= m_; ++rr) Mi[rr][i] = RatPoly::constant(Rat(rr == m_ ? 1 : 0));
    primal[i] = det_poly(Mi);
  }
  std::vector<RatPoly> dual(m_ + 1);
  for (int t = 0; t <= m_; ++t) {
    auto Mt = M;
    for (int cc = 0; cc <= m_; ++cc) Mt[t][cc] = RatPoly::constant(Rat(cc == m_ ? 1 : 0));
    dual[t] = det_poly(Mt);
  }
  // Slack conditions for the inactive column constraints.
  std::vector<RatPoly> slack;
  std::vector<bool> incol(n_, false);
  for (int j : bcols) incol[j] = true;
  for (int j = 0; j < n_; ++j) {
    if (incol[j]) continue;
    RatPoly s;
    for (int i = 0; i < m_; ++i) s = s + entry(i, j) * primal[i];
    s = s - primal[m_];
    slack.push_back(std::move(s));
  }

  // Clear denominators with one common factor so ratios stay consistent.
  Int lcm(1);
  auto fold = [&lcm](const RatPoly& p) {
    for (const Rat& c : p.coeffs())
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  };
  fold(den);
  for (auto& p : primal) fold(p);
  for (auto& p : dual) fold(p);
  for (auto& p : slack) fold(p);
  Rat L(lcm);
  auto to_int = [&L](const RatPoly& p) {
    std::vector<Int> v(p.coeffs().size());
    for (size_t i = 0; i < v.size(); ++i) {
      Rat t = p.coeffs()[i] * L;
      v[i] = t.get_num();
    }
    return IntPoly(std::move(v));
  };
  b.den = to_int(den);
  b.val = to_int(primal[m_]);
  for (int i = 0; i < m_; ++i) b.primal.push_back(to_int(primal[i]));
  for (auto& p : slack) b.slack.push_back(to_int(p));
  // Dual sign conditions: >= 0 for active column constraints, <= 0 for active
  // x >= 0 constraints; the equality multiplier is free.
  for (size_t t = 0; t < bcols.size(); ++t) b.dual_geq.push_back(to_int(dual[t]));
  for (size_t t = 0; t < brows.size(); ++t) b.dual_leq.push_back(to_int(dual[bcols.size() + t]));

  b.max_degree = b.den.degree();
  auto upd = [&b](const IntPoly& p) { b.max_degree = std::max(b.max_degree, p.degree()); };
  upd(b.val);
  for (auto& p : b.primal) upd(p);
  for (auto& p : b.slack) upd(p);
  for (auto& p : b.dual_geq) upd(p);
  for (auto& p : b.dual_leq) upd(p);
  bundle_ = std::move(b);
}

Frac ParamMatrixGame::value_at(const Dyadic& w) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (!bundle_) rebuild(w);
    const Bundle& b = *bundle_;
    int D = b.max_degree;
    long f = std::max(0L, -w.exponent());
    Int base = w.mantissa();
    if (w.exponent() > 0) base <<= static_cast<unsigned long>(w.exponent());
    std::vector<Int> powers(D + 1);
    powers[0] = 1;
    for (int i = 1; i <= D; ++i) powers[i] = powers[i - 1] * base;

    Int eden = eval_scaled(b.den, powers, f, D);
    int sden = sign(eden);
    bool ok = sden != 0;
    if (ok) {
      for (const IntPoly& p : b.primal)
        if (sign(eval_scaled(p, powers, f, D)) * sden < 0) {
          ok = false;
          break;
        }
    }
    if (ok) {
      for (const IntPoly& p : b.slack)
        if (sign(eval_scaled(p, powers, f, D)) * sden < 0) {
          ok = false;
          break;
        }
    }
    if (ok) {
      for (const IntPoly& p : b.dual_geq)
        if (sign(eval_scaled(p, powers, f, D)) * sden < 0) {
          ok = false;
          break;
        }
    }
    if (ok) {
      for (const IntPoly& p : b.dual_leq)
        if (sign(eval_scaled(p, powers, f, D)) * sden > 0) {
          ok = false;
          break;
        }
    }
    if (ok) {
      Frac out;
      Int eval_num = eval_scaled(b.val, powers, f, D);
      if (sden < 0) {
        out.num = flipped_ ? eval_num : -eval_num;
        out.den = -eden;
      } else {
        out.num = flipped_ ? -eval_num : eval_num;
        out.den = eden;
      }
      return out;
    }
    bundle_.reset();
  }
  throw std::logic_error("ParamMatrixGame: freshly rebuilt basis fails its own conditions");
}

}  // namespace sgsolve
