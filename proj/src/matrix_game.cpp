#include "sgsolve/matrix_game.hpp"

#include <algorithm>

namespace sgsolve {

MatrixGame MatrixGame::transposed_negated() const {
  MatrixGame t(n, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) t.at(j, i) = -at(i, j);
  return t;
}

bool GameSolution::certificate_holds(const MatrixGame& g) const {
  Rat sx(0), sy(0);
  for (const Rat& v : x) {
    if (sign(v) < 0) return false;
    sx += v;
  }
  for (const Rat& v : y) {
    if (sign(v) < 0) return false;
    sy += v;
  }
  if (sx != 1 || sy != 1) return false;
  if (static_cast<int>(x.size()) != g.m || static_cast<int>(y.size()) != g.n) return false;
  // min_j sum_i x_i a_ij == value
  bool first = true;
  Rat mn(0);
  for (int j = 0; j < g.n; ++j) {
    Rat t(0);
    for (int i = 0; i < g.m; ++i) t += x[i] * g.at(i, j);
    if (first || t < mn) mn = t;
    first = false;
  }
  if (mn != value) return false;
  first = true;
  Rat mx(0);
  for (int i = 0; i < g.m; ++i) {
    Rat t(0);
    for (int j = 0; j < g.n; ++j) t += g.at(i, j) * y[j];
    if (first || t > mx) mx = t;
    first = false;
  }
  return mx == value;
}

namespace {

GameSolution solve_row_vector(const MatrixGame& g) {
  // m == 1: the column player picks the minimum entry.
  GameSolution s;
  int js = 0;
  for (int j = 1; j < g.n; ++j)
    if (g.at(0, j) < g.at(0, js)) js = j;
  s.value = g.at(0, js);
  s.x.assign(1, Rat(1));
  s.y.assign(g.n, Rat(0));
  s.y[js] = 1;
  s.basis = std::vector<int>{js, g.n + g.m};
  return s;
}

GameSolution solve_col_vector(const MatrixGame& g) {
  // n == 1: the row player picks the maximum entry.
  GameSolution s;
  int is = 0;
  for (int i = 1; i < g.m; ++i)
    if (g.at(i, 0) > g.at(is, 0)) is = i;
  s.value = g.at(is, 0);
  s.x.assign(g.m, Rat(0));
  s.x[is] = 1;
  s.y.assign(1, Rat(1));
  std::vector<int> basis{0};
  for (int i = 0; i < g.m; ++i)
    if (i != is) basis.push_back(g.n + i);
  basis.push_back(g.n + g.m);
  s.basis = std::move(basis);
  return s;
}

std::optional<GameSolution> solve_2x2_mixed(const MatrixGame& g) {
  // Pure saddle point first.
  // row minima / maximin
  int bi = -1, bj = -1;
  Rat maximin, minimax;
  for (int i = 0; i < 2; ++i) {
    int jmin = (g.at(i, 0) <= g.at(i, 1)) ? 0 : 1;
    if (bi < 0 || g.at(i, jmin) > maximin) {
      maximin = g.at(i, jmin);
      bi = i;
    }
  }
  for (int j = 0; j < 2; ++j) {
    int imax = (g.at(0, j) >= g.at(1, j)) ? 0 : 1;
    if (bj < 0 || g.at(imax, j) < minimax) {
      minimax = g.at(imax, j);
      bj = j;
    }
  }
  GameSolution s;
  if (maximin == minimax) {
    s.value = maximin;
    s.x.assign(2, Rat(0));
    s.y.assign(2, Rat(0));
    // locate a saddle cell exactly
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        bool rowmin = g.at(i, j) <= g.at(i, 1 - j);
        bool colmax = g.at(i, j) >= g.at(1 - i, j);
        if (rowmin && colmax && g.at(i, j) == maximin) {
          s.x[i] = 1;
          s.y[j] = 1;
          s.basis = std::vector<int>{j, 2 + (1 - i), 4};
          return s;
        }
      }
    return std::nullopt;  // should be unreachable
  }
  Rat den = g.at(0, 0) + g.at(1, 1) - g.at(0, 1) - g.at(1, 0);
  if (sign(den) == 0) return std::nullopt;
  s.value = (g.at(0, 0) * g.at(1, 1) - g.at(0, 1) * g.at(1, 0)) / den;
  s.x = {(g.at(1, 1) - g.at(1, 0)) / den, (g.at(0, 0) - g.at(0, 1)) / den};
  s.y = {(g.at(1, 1) - g.at(0, 1)) / den, (g.at(0, 0) - g.at(1, 0)) / den};
  for (const Rat& t : s.x)
    if (sign(t) < 0) return std::nullopt;
  for (const Rat& t : s.y)
    if (sign(t) < 0) return std::nullopt;
  s.basis = std::vector<int>{0, 1, 4};
  return s;
}

// Full-tableau exact simplex for max v subject to
//   sum_i a_ij x_i - v - s_j = 0   (j = 0..n-1, s_j >= 0)
//   sum_i x_i = 1, x >= 0, v free.
// Variables are indexed x_i -> i, v -> m, s_j -> m+1+j.
GameSolution solve_simplex(const MatrixGame& g) {
  const int m = g.m, n = g.n;
  const int nvars = m + 1 + n;
  const int nrows = n + 1;
  // rows[r][0..nvars-1], rhs at index nvars
  std::vector<std::vector<Rat>> T(nrows, std::vector<Rat>(nvars + 1, Rat(0)));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) T[j][i] = g.at(i, j);
    T[j][m] = -1;
    T[j][m + 1 + j] = -1;
  }
  for (int i = 0; i < m; ++i) T[n][i] = 1;
  T[n][nvars] = 1;

  // Initial feasible basis: x_0, v, and all slacks except the one for the
  // column minimizing a_0j.
  int jstar = 0;
  for (int j = 1; j < n; ++j)
    if (g.at(0, j) < g.at(0, jstar)) jstar = j;
  std::vector<int> basis;
  basis.push_back(0);
  basis.push_back(m);
  for (int j = 0; j < n; ++j)
    if (j != jstar) basis.push_back(m + 1 + j);

  // Gauss-Jordan to put the basis columns into identity position.
  std::vector<int> basis_row(nrows, -1);
  std::vector<bool> row_used(nrows, false);
  for (size_t bidx = 0; bidx < basis.size(); ++bidx) {
    int col = basis[bidx];
    int pr = -1;
    for (int r = 0; r < nrows; ++r) {
      if (!row_used[r] && sign(T[r][col]) != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) throw std::logic_error("simplex: singular start basis");
    row_used[pr] = true;
    basis_row[pr] = col;
    Rat piv = T[pr][col];
    for (int c = 0; c <= nvars; ++c) T[pr][c] /= piv;
    for (int r = 0; r < nrows; ++r) {
      if (r == pr || sign(T[r][col]) == 0) continue;
      Rat f = T[r][col];
      for (int c = 0; c <= nvars; ++c) T[r][c] -= f * T[pr][c];
    }
  }
  // map: row -> basic variable
  std::vector<int> basic(nrows);
  for (int r = 0; r < nrows; ++r) basic[r] = basis_row[r];
  int vrow = -1;
  for (int r = 0; r < nrows; ++r)
    if (basic[r] == m) vrow = r;
  std::vector<bool> is_basic(nvars, false);
  for (int r = 0; r < nrows; ++r) is_basic[basic[r]] = true;

  for (;;) {
    // Entering: smallest-index nonbasic variable with negative coefficient in
    // the v row (increasing it increases v). Bland's rule.
    int enter = -1;
    for (int j = 0; j < nvars; ++j) {
      if (is_basic[j]) continue;
      if (sign(T[vrow][j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimal
    // Ratio test over rows other than vrow with positive column entry.
    int leave_row = -1;
    Rat best;
    for (int r = 0; r < nrows; ++r) {
      if (r == vrow) continue;  // v is free and never leaves
      if (sign(T[r][enter]) <= 0) continue;
      Rat ratio = T[r][nvars] / T[r][enter];
      if (leave_row < 0 || ratio < best ||
          (ratio == best && basic[r] < basic[leave_row])) {
        best = ratio;
        leave_row = r;
      }
    }
    if (leave_row < 0) throw std::logic_error("simplex: unbounded matrix game LP");
    // Pivot.
    int leave_var = basic[leave_row];
    Rat piv = T[leave_row][enter];
    for (int c = 0; c <= nvars; ++c) T[leave_row][c] /= piv;
    for (int r = 0; r < nrows; ++r) {
      if (r == leave_row || sign(T[r][enter]) == 0) continue;
      Rat f = T[r][enter];
      for (int c = 0; c <= nvars; ++c) T[r][c] -= f * T[leave_row][c];
    }
    basic[leave_row] = enter;
    is_basic[leave_var] = false;
    is_basic[enter] = true;
  }

  GameSolution s;
  s.value = T[vrow][nvars];
  s.x.assign(m, Rat(0));
  for (int r = 0; r < nrows; ++r)
    if (basic[r] < m) s.x[basic[r]] = T[r][nvars];
  s.y.assign(n, Rat(0));
  for (int j = 0; j < n; ++j) {
    int col = m + 1 + j;
    if (!is_basic[col]) s.y[j] = T[vrow][col];
  }
  std::vector<int> bset;
  for (int j = 0; j < n; ++j)
    if (!is_basic[m + 1 + j]) bset.push_back(j);
  for (int i = 0; i < m; ++i)
    if (!is_basic[i]) bset.push_back(n + i);
  bset.push_back(n + m);
  s.basis = std::move(bset);
  return s;
}

GameSolution flip_solution(const MatrixGame& g, GameSolution t) {
  GameSolution s;
  s.value = -t.value;
  s.x = std::move(t.y);
  s.y = std::move(t.x);
  s.basis = std::nullopt;
  (void)g;
  return s;
}

}  // namespace

GameSolution solve(const MatrixGame& g) {
  if (g.m < 1 || g.n < 1) throw invalid_input("matrix game needs m,n >= 1");
  GameSolution s;
  if (g.m == 1) {
    s = solve_row_vector(g);
  } else if (g.n == 1) {
    s = solve_col_vector(g);
  } else if (g.m > g.n) {
    // Keep the basis system at size min(m,n)+1 by solving the dual game.
    s = flip_solution(g, solve(g.transposed_negated()));
  } else if (g.m == 2 && g.n == 2) {
    auto fast = solve_2x2_mixed(g);
    s = fast ? *fast : solve_simplex(g);
  } else {
    s = solve_simplex(g);
  }
  if (!s.certificate_holds(g)) throw std::logic_error("matrix game: duality certificate failed");
  return s;
}

namespace {

// Fraction-free Bareiss elimination on an augmented integer matrix; returns
// false when the square part is singular. On success fills sol with the
// rational solution of M z = rhs.
bool solve_linear_exact(std::vector<std::vector<Int>> a, int k, std::vector<Rat>& sol) {
  // a: k rows of k+1 entries (augmented)
  Int prev(1);
  int swaps = 0;
  for (int l = 0; l < k; ++l) {
    int pr = -1;
    for (int r = l; r < k; ++r)
      if (sign(a[r][l]) != 0) {
        pr = r;
        break;
      }
    if (pr < 0) return false;
    if (pr != l) {
      std::swap(a[pr], a[l]);
      ++swaps;
    }
    for (int r = l + 1; r < k; ++r) {
      for (int c = l + 1; c <= k; ++c) {
        Int t = a[r][c] * a[l][l] - a[r][l] * a[l][c];
        mpz_divexact(a[r][c].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[r][l] = 0;
    }
    prev = a[l][l];
  }
  (void)swaps;
  sol.assign(k, Rat(0));
  for (int r = k - 1; r >= 0; --r) {
    Rat acc(a[r][k]);
    for (int c = r + 1; c < k; ++c) acc -= Rat(a[r][c]) * sol[c];
    sol[r] = acc / Rat(a[r][r]);
  }
  return true;
}

// Enumerate potential basis sets of the primal LP for a game with m <= n and
// return the best feasible (maximal v) solution along with its basis.
GameSolution enumerate_primal(const MatrixGame& g) {
  const int m = g.m, n = g.n;
  GameSolution best;
  bool have = false;
  // choose col subset C of size t and row subset R of size m - t
  std::vector<int> cols, rows;
  // iterate over all subsets of {0..n-1} x {0..m-1} with |C|+|R| = m
  for (int t = 0; t <= m; ++t) {
    // subsets of columns of size t
    std::vector<int> csel(t);
    std::function<void(int, int)> rec_cols = [&](int start, int depth) {
      if (depth == t) {
        int rneed = m - t;
        std::vector<int> rsel(rneed);
        std::function<void(int, int)> rec_rows = [&](int rstart, int rdepth) {
          if (rdepth == rneed) {
            // Build M_B over variables (x_1..x_m, v); rows: active column
            // constraints, active x>=0 constraints, the equality last.
            std::vector<std::vector<Int>> a;
            std::vector<Int> dens;
            a.reserve(m + 1);
            for (int jj = 0; jj < t; ++jj) {
              int j = csel[jj];
              // -a_1j x_1 - ... - a_mj x_m + v = 0, cleared of denominators
              Int den(1);
              for (int i = 0; i < m; ++i)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g.at(i, j).get_den().get_mpz_t());
              std::vector<Int> row(m + 2, Int(0));
              for (int i = 0; i < m; ++i) {
                Rat v = -g.at(i, j) * Rat(den);
                row[i] = v.get_num();
              }
              row[m] = den;
              row[m + 1] = 0;
              a.push_back(std::move(row));
            }
            for (int ii = 0; ii < rneed; ++ii) {
              std::vector<Int> row(m + 2, Int(0));
              row[rsel[ii]] = 1;
              a.push_back(std::move(row));
            }
            {
              std::vector<Int> row(m + 2, Int(0));
              for (int i = 0; i < m; ++i) row[i] = 1;
              row[m + 1] = 1;  // rhs
              a.push_back(std::move(row));
            }
            std::vector<Rat> z;
            if (solve_linear_exact(std::move(a), m + 1, z)) {
              // z = (x_1..x_m, v); feasibility check
              bool ok = true;
              for (int i = 0; i < m && ok; ++i)
                if (sign(z[i]) < 0) ok = false;
              if (ok) {
                for (int j = 0; j < n && ok; ++j) {
                  Rat t2(0);
                  for (int i = 0; i < m; ++i) t2 += z[i] * g.at(i, j);
                  if (t2 < z[m]) ok = false;
                }
              }
              if (ok && (!have || z[m] > best.value)) {
                have = true;
                best.value = z[m];
                best.x.assign(z.begin(), z.begin() + m);
                std::vector<int> bset(csel.begin(), csel.end());
                for (int ii = 0; ii < rneed; ++ii) bset.push_back(n + rsel[ii]);
                bset.push_back(n + m);
                best.basis = std::move(bset);
              }
            }
            return;
          }
          for (int r = rstart; r < m; ++r) {
            rsel[rdepth] = r;
            rec_rows(r + 1, rdepth + 1);
          }
        };
        rec_rows(0, 0);
        return;
      }
      for (int c = start; c < n; ++c) {
        csel[depth] = c;
        rec_cols(c + 1, depth + 1);
      }
    };
    rec_cols(0, 0);
  }
  if (!have) throw std::logic_error("basis enumeration found no feasible basis");
  return best;
}

}  // namespace

GameSolution solve_by_basis_enumeration(const MatrixGame& g) {
  if (g.m < 1 || g.n < 1) throw invalid_input("matrix game needs m,n >= 1");
  if (g.m > g.n) {
    GameSolution t = solve_by_basis_enumeration(g.transposed_negated());
    GameSolution s;
    s.value = -t.value;
    s.x = std::move(t.y);
    s.y = std::move(t.x);
    return s;
  }
  GameSolution primal = enumerate_primal(g);
  GameSolution dual = enumerate_primal(g.transposed_negated());
  if (primal.value != -dual.value)
    throw std::logic_error("basis enumeration: primal/dual value mismatch");
  primal.y = std::move(dual.x);
  if (!primal.certificate_holds(g))
    throw std::logic_error("basis enumeration: certificate failed");
  return primal;
}

Rat value_distance_bound(const MatrixGame& a, const MatrixGame& b) {
  if (a.m != b.m || a.n != b.n) throw invalid_input("value_distance_bound: dimension mismatch");
  Rat best(0);
  for (size_t i = 0; i < a.a.size(); ++i) {
    Rat d = abs(a.a[i] - b.a[i]);
    if (d > best) best = d;
  }
  return best;
}

}  // namespace sgsolve
