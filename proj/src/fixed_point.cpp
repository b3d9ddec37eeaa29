#include "sgsolve/fixed_point.hpp"

#include <algorithm>

namespace sgsolve {

namespace {

Rat inf_norm_diff(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  Rat r(0);
  for (size_t i = 0; i < a.size(); ++i) {
    Rat d = abs(a[i] - b[i]);
    if (d > r) r = d;
  }
  return r;
}

// Exact solve of (I - Q) w = c by Gauss-Jordan; Q substochastic so the system
// is nonsingular.
std::vector<Rat> policy_evaluate(const std::vector<std::vector<Rat>>& Q, const std::vector<Rat>& c) {
  int N = static_cast<int>(c.size());
  std::vector<std::vector<Rat>> a(N, std::vector<Rat>(N + 1, Rat(0)));
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) a[i][j] = (i == j ? Rat(1) : Rat(0)) - Q[i][j];
    a[i][N] = c[i];
  }
  for (int l = 0; l < N; ++l) {
    int pr = -1;
    for (int r = l; r < N; ++r)
      if (sign(a[r][l]) != 0) {
        pr = r;
        break;
      }
    if (pr < 0) throw std::logic_error("policy_evaluate: singular system");
    std::swap(a[pr], a[l]);
    Rat piv = a[l][l];
    for (int cidx = l; cidx <= N; ++cidx) a[l][cidx] /= piv;
    for (int r = 0; r < N; ++r) {
      if (r == l || sign(a[r][l]) == 0) continue;
      Rat f = a[r][l];
      for (int cidx = l; cidx <= N; ++cidx) a[r][cidx] -= f * a[l][cidx];
    }
  }
  std::vector<Rat> w(N);
  for (int i = 0; i < N; ++i) w[i] = a[i][N];
  return w;
}

long accuracy_bits(const Rat& err) {
  if (sign(err) == 0) return 1L << 20;
  return std::max(0L, bitsize(Int(err.get_den())) - bitsize(Int(err.get_num())));
}

}  // namespace

FixedPointResult certified_fixed_point(const StochasticGame& g, long target_bits, int max_rounds) {
  if (g.variant != GameVariant::shapley)
    throw invalid_input("certified_fixed_point: shapley games only");
  Rat smin = g.min_stop_probability();
  if (sign(smin) <= 0) throw invalid_input("certified_fixed_point: needs s > 0");
  Rat target = pow2_rat(-target_bits);
  const long max_grid = target_bits + 64;

  FixedPointResult res;
  std::vector<Rat> v(g.N, Rat(0));
  Rat prev_resid(-1);
  for (int round = 0; round < max_rounds; ++round) {
    res.rounds = round + 1;
    std::vector<Rat> t(g.N);
    std::vector<std::vector<Rat>> Q(g.N, std::vector<Rat>(g.N, Rat(0)));
    std::vector<Rat> c(g.N, Rat(0));
    for (int k = 0; k < g.N; ++k) {
      GameSolution sol = solve(local_game(g, k, v));
      t[k] = sol.value;
      for (int i = 0; i < g.m[k]; ++i) {
        if (sign(sol.x[i]) == 0) continue;
        for (int j = 0; j < g.n[k]; ++j) {
          if (sign(sol.y[j]) == 0) continue;
          Rat w = sol.x[i] * sol.y[j];
          const Cell& cc = g.cell(k, i, j);
          c[k] += w * (cc.a + cc.s * cc.b);
          for (int l = 0; l < g.N; ++l)
            if (sign(cc.p[l]) != 0) Q[k][l] += w * cc.p[l];
        }
      }
    }
    Rat resid = inf_norm_diff(t, v);
    Rat err = resid / smin;
    if (err <= target) {
      res.values = v;
      res.error_bound = err;
      res.converged = true;
      return res;
    }
    // Candidate Newton step: exact value of the current strategy pair.
    std::vector<Rat> w = policy_evaluate(Q, c);
    std::vector<Rat> tw = apply_T(g, w);
    Rat resid_w = inf_norm_diff(tw, w);
    std::vector<Rat> next;
    Rat next_resid;
    if (resid_w < resid) {
      next = std::move(w);
      next_resid = resid_w;
    } else {
      next = std::move(t);
      next_resid = resid * (Rat(1) - smin);
    }
    // Round to a grid tracking roughly double the current certified accuracy
    // so coefficient sizes stay proportional to the precision achieved.
    long acc = accuracy_bits(next_resid / smin);
    long grid = std::min(max_grid, 2 * acc + 48);
    for (Rat& x : next) x = round_rat_to_grid(x, grid);
    v = std::move(next);
    prev_resid = resid;
  }
  // Best effort: certify whatever we reached.
  std::vector<Rat> t = apply_T(g, v);
  res.values = v;
  res.error_bound = inf_norm_diff(t, v) / smin;
  res.converged = res.error_bound <= target;
  return res;
}

}  // namespace sgsolve
