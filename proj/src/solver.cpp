#include "sgsolve/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "sgsolve/fixed_point.hpp"
#include "sgsolve/param_game.hpp"

namespace sgsolve {

long SolverOptions::effective_ceiling() const {
  if (precision_ceiling > 0) return precision_ceiling;
  if (const char* env = std::getenv("SGSOLVE_PRECISION_CEILING")) {
    long v = std::atol(env);
    if (v > 0) return v;
  }
  return 1000000;
}

std::string SolveAudit::to_text() const {
  std::ostringstream os;
  os << "approx_k " << approx_k << "\n";
  os << "profile " << provenance_name(profile.provenance) << " degree_bound " << profile.degree_bound
     << " height_bits " << profile.height_bitsize_bound << " tau " << tau_normalized << "\n";
  os << "scale " << rat_to_string(scale) << "\n";
  if (!reconstruction_precision.empty()) {
    os << "reconstruction_precision";
    for (long s : reconstruction_precision) os << " " << s;
    os << "\n";
  }
  for (const LadderRung& r : lambda_ladder) {
    os << "lambda " << rat_to_string(r.lambda) << " estimates";
    for (const Rat& e : r.estimates) os << " " << rat_to_string(e);
    os << "\n";
  }
  if (approximate_only) os << "approximate_only true\n";
  for (const std::string& n : notes) os << "note " << n << "\n";
  return os.str();
}

namespace {

void require_normalized_everett(const StochasticGame& g) {
  if (g.variant != GameVariant::everett)
    throw invalid_input("bisection requires an Everett-form game");
  for (int k = 0; k < g.N; ++k)
    for (const Cell& c : g.cells[k])
      if (abs(c.b) > 1) throw invalid_input("bisection requires payoffs in [-1,1]");
}

ParamMatrixGame last_position_param(const StochasticGame& g) {
  int k = g.N - 1;
  std::vector<std::vector<Rat>> C(g.m[k], std::vector<Rat>(g.n[k]));
  std::vector<std::vector<Rat>> D(g.m[k], std::vector<Rat>(g.n[k]));
  for (int i = 0; i < g.m[k]; ++i)
    for (int j = 0; j < g.n[k]; ++j) {
      const Cell& c = g.cell(k, i, j);
      C[i][j] = c.s * c.b;
      D[i][j] = c.p[k];
    }
  return ParamMatrixGame(std::move(C), std::move(D));
}

std::vector<Dyadic> approx_val_impl(const StochasticGame& g, long k, const BoundProfile& prof,
                                    long L);

// ApproxBisect on the last position of g (g has N+1 positions in the
// algorithm's terms).
Dyadic bisect_impl(const StochasticGame& g, long k, const BoundProfile& prof, long L,
                   std::vector<std::pair<Dyadic, Dyadic>>* trace) {
  if (k < 2) throw invalid_input("approx_bisect: accuracy parameter k must be >= 2");
  require_normalized_everett(g);
  if (g.N < 1) throw invalid_input("approx_bisect: needs at least one position");
  const int last = g.N - 1;
  const int n_red = g.N - 1;

  std::optional<ParamMatrixGame> param;
  if (n_red == 0) param.emplace(last_position_param(g));

  // ~V(v) computed through an approximation of the reduced-game values at
  // inner accuracy kp; exact when there is no reduced game.
  auto eval_V = [&](const Dyadic& v, long kp, long inner_L) -> Frac {
    if (n_red == 0) return param->value_at(v);
    StochasticGame red = reduced_game(g, v.to_rat());
    std::vector<Dyadic> w = approx_val_impl(red, kp, prof, inner_L);
    std::vector<Rat> val(g.N);
    for (int i = 0; i < n_red; ++i) val[i] = Dyadic::round_to_grid(w[i].to_rat(), kp).to_rat();
    val[last] = v.to_rat();
    Rat value = solve(local_game(g, last, val)).value;
    return Frac{Int(value.get_num()), Int(value.get_den())};
  };

  long e0 = prof.sep_exponent_at(std::max(n_red, 1), L, 0);
  long kp0 = e0 + 3;  // ceil(-log2(sep/5))
  Frac v0 = eval_V(Dyadic(Int(0)), kp0, L);
  // |v0| <= 2*eps  <=>  5 |num| 2^(e0-1) <= den
  {
    Int lhs = 5 * abs(v0.num);
    lhs <<= static_cast<unsigned long>(e0 - 1);
    if (lhs <= v0.den) return Dyadic(Int(0));
  }
  Dyadic vl(Int(0));
  Dyadic vr(Int(sign(v0.num) > 0 ? 1 : -1));
  if (trace) trace->push_back({vl, vr});
  for (long i = 1; i <= k - 1; ++i) {
    Dyadic v = (vl + vr).half();
    long Li = std::max(L, i);
    long ei = prof.sep_exponent_at(std::max(n_red, 1), Li, i);
    long kp = ei + 3;
    Frac vp = eval_V(v, kp, Li);
    int c = cmp_abs_dyadic(vp, v);
    if (prof.heuristic() && n_red >= 1) {
      // The emulation guarantee is only heuristic here: refuse to branch on a
      // comparison inside the approximation noise band (3 * 2^-kp).
      Rat margin = abs(abs(vp.to_rat()) - abs(v.to_rat()));
      if (margin <= Rat(3) * pow2_rat(-kp))
        throw precision_exhausted(
            "approx_bisect: comparison within noise at grid step " + std::to_string(i) +
            " (heuristic bound profile; larger constant C required)");
    }
    if (c > 0)
      vl = v;
    else
      vr = v;
    if (trace) trace->push_back({vl, vr});
  }
  return (vl + vr).half();
}

std::vector<Dyadic> approx_val_impl(const StochasticGame& g, long k, const BoundProfile& prof,
                                    long L) {
  std::vector<Dyadic> out(g.N);
  for (int i = 0; i < g.N; ++i) {
    StochasticGame swapped = swap_positions(g, i, g.N - 1);
    out[i] = bisect_impl(swapped, k, prof, L, nullptr);
  }
  return out;
}

}  // namespace

Dyadic approx_bisect(const StochasticGame& g, long k, const BoundProfile& prof,
                     std::vector<std::pair<Dyadic, Dyadic>>* trace) {
  return bisect_impl(g, k, prof, g.N >= 1 ? g.bitsize_tau() : 1, trace);
}

std::vector<Dyadic> approx_val(const StochasticGame& g, long k, const BoundProfile& prof) {
  require_normalized_everett(g);
  if (g.N == 0) return {};
  return approx_val_impl(g, k, prof, g.bitsize_tau());
}

namespace {

struct ExactPipelineOut {
  std::vector<Dyadic> w;
  long k = 0;
  long s = 0;
};

ExactPipelineOut run_approx_pipeline(const StochasticGame& gn, const BoundProfile& prof, long s,
                                     const SolverOptions& opts) {
  ExactPipelineOut out;
  out.s = s;
  out.k = s + ceil_log2(Int(12) * prof.degree_bound);
  if (out.k > opts.effective_ceiling())
    throw precision_exhausted("required approximation precision " + std::to_string(out.k) +
                              " bits exceeds the configured ceiling");
  out.w = approx_val(gn, out.k, prof);
  return out;
}

void fill_common_audit(SolveResult& res, const BoundProfile& prof, const Rat& scale, long tau) {
  res.audit.profile = prof;
  res.audit.scale = scale;
  res.audit.tau_normalized = tau;
}

void fill_values(SolveResult& res, const std::vector<IntPoly>& polys,
                 const std::vector<Dyadic>& w, long s, long degree_bound, const Rat& scale,
                 long k) {
  Rat tol = pow2_rat(-s) / Rat(12 * degree_bound);
  for (size_t i = 0; i < polys.size(); ++i) {
    Rat a = w[i].to_rat();
    AlgebraicNumber alpha(polys[i], a - tol, a + tol);
    res.values.push_back(scale == 1 ? alpha : alpha.scaled(scale));
  }
  long lg_scale = 0;
  if (scale > 1) lg_scale = ceil_log2(Int(scale.get_num()) / Int(scale.get_den()) + 1);
  res.approx_bits = std::max(2L, k - lg_scale - 2);
  for (size_t i = 0; i < w.size(); ++i)
    res.approx_values.push_back(Dyadic::round_to_grid(scale * w[i].to_rat(), res.approx_bits));
}

}  // namespace

SolveResult solve_shapley_exact(const StochasticGame& g, const SolverOptions& opts) {
  validate(g);
  if (g.variant != GameVariant::shapley) throw invalid_input("solve_shapley_exact: wrong variant");
  StochasticGame eve = shapley_to_everett(g);
  auto [gn, scale] = normalize(eve);
  long tau = gn.bitsize_tau();
  BoundProfile prof = shapley_bounds(g.N, gn.max_actions(), tau);
  Int H = pow2(prof.height_bitsize_bound);
  long s = kll_precision(prof.degree_bound, H);
  ExactPipelineOut ap = run_approx_pipeline(gn, prof, s, opts);

  SolveResult res;
  fill_common_audit(res, prof, scale, tau);
  res.audit.approx_k = ap.k;
  std::vector<IntPoly> polys;
  for (int i = 0; i < g.N; ++i) {
    ReconstructionRequest req{ap.w[i], prof.degree_bound, H, s};
    polys.push_back(reconstruct_min_poly(req));
    res.audit.reconstruction_precision.push_back(s);
    if (polys.back().degree() > prof.degree_bound)
      throw verification_error("reconstructed degree exceeds the profile bound");
  }
  fill_values(res, polys, ap.w, s, prof.degree_bound, scale, ap.k);
  return res;
}

SolveResult solve_everett(const StochasticGame& g, long C, const SolverOptions& opts) {
  validate(g);
  if (g.variant != GameVariant::everett) throw invalid_input("solve_everett: wrong variant");
  auto [gn, scale] = normalize(g);
  long tau = gn.bitsize_tau();
  BoundProfile prof = everett_bounds(g.N, gn.max_actions(), tau, C);
  Int H = pow2(prof.height_bitsize_bound);
  long s = kll_precision(prof.degree_bound, H);

  // The constant C is heuristic: reconstruct at precision s and 2s and accept
  // only exact polynomial agreement.
  ExactPipelineOut p1 = run_approx_pipeline(gn, prof, s, opts);
  ExactPipelineOut p2 = run_approx_pipeline(gn, prof, 2 * s, opts);

  SolveResult res;
  fill_common_audit(res, prof, scale, tau);
  res.audit.approx_k = p2.k;
  std::vector<IntPoly> polys;
  for (int i = 0; i < g.N; ++i) {
    ReconstructionRequest r1{p1.w[i], prof.degree_bound, H, s};
    ReconstructionRequest r2{p2.w[i], prof.degree_bound, H, 2 * s};
    IntPoly q1, q2;
    try {
      q1 = reconstruct_min_poly(r1);
      q2 = reconstruct_min_poly(r2);
    } catch (const reconstruction_error& e) {
      throw verification_error(std::string("everett reconstruction failed (") + e.what() +
                               "); a larger constant C is likely required");
    }
    if (!(q1 == q2))
      throw verification_error("everett stability check failed at position " +
                               std::to_string(i + 1) + "; a larger constant C is likely required");
    polys.push_back(q2);
    res.audit.reconstruction_precision.push_back(2 * s);
    if (q2.degree() > prof.degree_bound)
      throw verification_error("reconstructed degree exceeds the profile bound");
  }
  fill_values(res, polys, p2.w, 2 * s, prof.degree_bound, scale, p2.k);
  res.audit.notes.push_back("stability protocol: reconstructions at s and 2s agreed");
  return res;
}

SolveResult solve_gillette(const StochasticGame& g, long C, const SolverOptions& opts) {
  validate(g);
  if (g.variant != GameVariant::gillette) throw invalid_input("solve_gillette: wrong variant");
  auto [gn, scale] = normalize(g);
  long tau = gn.bitsize_tau();
  SolveResult res;
  BoundProfile prof;
  bool profile_overflow = false;
  try {
    prof = gillette_bounds(g.N, gn.max_actions(), tau, C);
  } catch (const precision_exhausted&) {
    profile_overflow = true;
    prof.provenance = BoundProvenance::gillette_heuristic;
    prof.N = g.N;
    prof.m = gn.max_actions();
    prof.tau = tau;
    prof.C = C;
    prof.degree_bound = opts.ladder_degree_cap;
    prof.height_bitsize_bound = opts.ladder_height_bits;
    res.audit.notes.push_back("gillette profile overflows machine integers; adaptive ladder only");
  }
  fill_common_audit(res, prof, scale, tau);

  // Heuristic reconstruction parameters for the ladder rungs.
  long dcap = std::min(prof.degree_bound, opts.ladder_degree_cap);
  long hbits = std::min(prof.height_bitsize_bound, opts.ladder_height_bits);
  Int Hh = pow2(hbits);
  long sh = kll_precision(dcap, Hh);
  long est_grid = sh + ceil_log2(Int(12) * dcap) + 2;

  // Starting rung: the instantiated lambda_eps when it is representable,
  // otherwise 2^-8; halve from there.
  long start_exp = 8;
  if (!profile_overflow) {
    Int lam_exp = Int(sh + ceil_log2(Int(12) * dcap) + 1) * tau *
                  pow_int(Int(prof.m), static_cast<unsigned long>(C) * g.N * g.N);
    if (lam_exp.fits_slong_p() && lam_exp.get_si() < opts.ladder_floor_exponent)
      start_exp = std::max(8L, lam_exp.get_si());
    else
      res.audit.notes.push_back("lambda_eps not representable; adaptive ladder from 2^-8");
  }

  std::vector<std::vector<IntPoly>> rung_polys;
  std::vector<std::vector<Dyadic>> rung_ests;
  bool accepted = false;
  for (long r = 0;; ++r) {
    long lam_exp = start_exp + r;
    if (lam_exp > opts.ladder_floor_exponent) {
      res.audit.notes.push_back("lambda floor reached without stable reconstruction");
      break;
    }
    Rat lambda = pow2_rat(-lam_exp);
    StochasticGame gl = gillette_discount(gn, lambda);
    long target = std::max(48L, est_grid + 4 - lam_exp);
    FixedPointResult fp = certified_fixed_point(gl, target);
    if (!fp.converged) {
      res.audit.notes.push_back("inner fixed-point iteration stalled at lambda = 2^-" +
                                std::to_string(lam_exp));
      break;
    }
    LadderRung rung;
    rung.lambda = lambda;
    std::vector<Dyadic> ests(g.N);
    std::vector<IntPoly> polys(g.N);
    bool all_recon = true;
    for (int i = 0; i < g.N; ++i) {
      Rat est = lambda * fp.values[i];
      rung.estimates.push_back(est);
      ests[i] = Dyadic::round_to_grid(est, est_grid);
      try {
        ReconstructionRequest req{ests[i], dcap, Hh, sh};
        polys[i] = reconstruct_min_poly(req);
      } catch (const reconstruction_error&) {
        all_recon = false;
      }
    }
    res.audit.lambda_ladder.push_back(std::move(rung));
    rung_ests.push_back(std::move(ests));
    rung_polys.push_back(std::move(polys));
    size_t R = rung_polys.size();
    if (all_recon && static_cast<int>(R) >= opts.ladder_min_rungs && R >= 2) {
      bool equal = true;
      for (int i = 0; i < g.N && equal; ++i)
        equal = !rung_polys[R - 2][i].is_zero() && rung_polys[R - 2][i] == rung_polys[R - 1][i];
      if (equal) {
        accepted = true;
        break;
      }
    }
  }

  if (accepted) {
    const auto& polys = rung_polys.back();
    const auto& ests = rung_ests.back();
    fill_values(res, polys, ests, sh, dcap, scale, est_grid);
    res.audit.approx_k = est_grid;
    res.audit.reconstruction_precision.assign(g.N, sh);
    res.audit.notes.push_back("ladder stability: two successive rungs reconstructed identically");
  } else {
    res.audit.approximate_only = true;
    if (res.audit.lambda_ladder.empty())
      throw precision_exhausted("gillette ladder produced no usable rung");
    const LadderRung& lastr = res.audit.lambda_ladder.back();
    res.approx_bits = std::max(2L, est_grid - 8);
    for (int i = 0; i < g.N; ++i) {
      Rat est = lastr.estimates[i] * scale;
      Dyadic d = Dyadic::round_to_grid(est, res.approx_bits);
      res.approx_values.push_back(d);
      res.values.push_back(AlgebraicNumber::from_rational(d.to_rat()));
    }
    res.audit.notes.push_back("values are ladder estimates, not certified exact");
  }
  return res;
}

std::pair<StationaryStrategy, StationaryStrategy> eps_optimal_strategy_shapley(
    const StochasticGame& g, const Rat& eps, const SolverOptions& opts) {
  (void)opts;
  validate(g);
  if (g.variant != GameVariant::shapley)
    throw invalid_input("eps_optimal_strategy_shapley: wrong variant");
  if (sign(eps) <= 0) throw invalid_input("eps must be positive");
  Rat lambda = g.min_stop_probability();
  StochasticGame eve = shapley_to_everett(g);
  auto [gn, scale] = normalize(eve);
  BoundProfile prof = shapley_bounds(g.N, gn.max_actions(), gn.bitsize_tau());
  // scale * 2^-k <= eps * lambda
  Rat need = scale / (eps * lambda);
  long k = 2;
  if (need > 1) {
    auto [lo, hi] = log2_bounds(need);
    (void)lo;
    Int num = hi.get_num(), den = hi.get_den();
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    k = std::max(2L, q.get_si() + 1);
  }
  std::vector<Dyadic> w = approx_val(gn, k, prof);
  std::vector<Rat> vt(g.N);
  for (int i = 0; i < g.N; ++i) vt[i] = scale * w[i].to_rat();
  StationaryStrategy xs, ys;
  xs.rows.resize(g.N);
  ys.rows.resize(g.N);
  for (int kpos = 0; kpos < g.N; ++kpos) {
    GameSolution sol = solve(local_game(g, kpos, vt));
    xs.rows[kpos] = sol.x;
    ys.rows[kpos] = sol.y;
  }
  return {xs, ys};
}

namespace {

// Closed rational interval arithmetic for the certified Cramer evaluation.
struct Ival {
  Rat lo, hi;
  static Ival point(const Rat& x) { return {x, x}; }
  bool contains_zero() const { return sign(lo) <= 0 && sign(hi) >= 0; }
  Rat width() const { return hi - lo; }
};
Ival operator+(const Ival& a, const Ival& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Ival operator-(const Ival& a, const Ival& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Ival operator*(const Ival& a, const Ival& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Rat lo = c[0], hi = c[0];
  for (int i = 1; i < 4; ++i) {
    if (c[i] < lo) lo = c[i];
    if (c[i] > hi) hi = c[i];
  }
  return {lo, hi};
}
Ival divide(const Ival& a, const Ival& b) {
  if (b.contains_zero()) throw precision_exhausted("interval division by an interval containing 0");
  Rat c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  Rat lo = c[0], hi = c[0];
  for (int i = 1; i < 4; ++i) {
    if (c[i] < lo) lo = c[i];
    if (c[i] > hi) hi = c[i];
  }
  return {lo, hi};
}

Ival det_interval(std::vector<std::vector<Ival>>& a) {
  size_t k = a.size();
  if (k == 1) return a[0][0];
  Ival acc = Ival::point(Rat(0));
  for (size_t j = 0; j < k; ++j) {
    std::vector<std::vector<Ival>> minor(k - 1);
    for (size_t r = 1; r < k; ++r)
      for (size_t c = 0; c < k; ++c)
        if (c != j) minor[r - 1].push_back(a[r][c]);
    Ival term = a[0][j] * det_interval(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

ExactStrategies exact_optimal_strategy_shapley(const StochasticGame& g, const SolverOptions& opts) {
  validate(g);
  if (g.variant != GameVariant::shapley)
    throw invalid_input("exact_optimal_strategy_shapley: wrong variant");
  SolveResult sol = solve_shapley_exact(g, opts);
  ExactStrategies out;
  out.row.resize(g.N);
  out.col.resize(g.N);

  bool all_rational = true;
  for (const AlgebraicNumber& a : sol.values)
    if (!a.is_rational()) all_rational = false;

  for (int kpos = 0; kpos < g.N; ++kpos) {
    if (all_rational) {
      std::vector<Rat> v(g.N);
      for (int l = 0; l < g.N; ++l) v[l] = sol.values[l].rational_value();
      GameSolution ls = solve(local_game(g, kpos, v));
      for (const Rat& p : ls.x) out.row[kpos].push_back(AlgebraicNumber::from_rational(p));
      for (const Rat& p : ls.y) out.col[kpos].push_back(AlgebraicNumber::from_rational(p));
      continue;
    }
    // Basis stabilization across two precision doublings.
    long prec = 64;
    std::optional<std::vector<int>> stable_basis;
    bool flip = g.m[kpos] > g.n[kpos];
    auto local_at = [&](const std::vector<Rat>& v) {
      MatrixGame mg = local_game(g, kpos, v);
      return flip ? mg.transposed_negated() : mg;
    };
    std::vector<AlgebraicNumber> refined = sol.values;
    for (int tries = 0; tries < 8 && !stable_basis; ++tries) {
      std::vector<std::vector<int>> bases;
      for (int d = 0; d < 3; ++d) {
        long p = prec << d;
        std::vector<Rat> v(g.N);
        for (int l = 0; l < g.N; ++l) {
          refined[l] = refined[l].refined(p);
          v[l] = (refined[l].lo() + refined[l].hi()) / 2;
        }
        GameSolution ls = solve(local_at(v));
        if (!ls.basis) throw std::logic_error("exact strategies: missing basis");
        bases.push_back(*ls.basis);
      }
      if (bases[0] == bases[1] && bases[1] == bases[2])
        stable_basis = bases[0];
      else
        prec *= 4;
    }
    if (!stable_basis)
      throw precision_exhausted("optimal basis never stabilized at position " +
                                std::to_string(kpos + 1));

    // Reconstruction bounds from the solved values' actual parameters.
    const MatrixGame probe = local_at(std::vector<Rat>(g.N, Rat(0)));
    int mm = probe.m, nn = probe.n;
    Int d_field(1);
    long tau_val = 1;
    for (int l = 0; l < g.N; ++l) {
      bool involved = false;
      for (const Cell& c : g.cells[kpos])
        if (sign(c.p[l]) != 0) involved = true;
      if (!involved) continue;
      d_field *= sol.values[l].degree();
      tau_val = std::max(tau_val, bitsize(sol.values[l].defining_poly().height()));
    }
    if (d_field > 64) d_field = 64;
    long dfl = std::max(1L, d_field.get_si());
    long tau_star =
        std::max(tau_val, (static_cast<long>(mm) + 1) * (g.bitsize_tau() + mm + 2));
    auto [dhat, that] = convert_bounds(dfl, tau_star);
    Int Hhat = pow2(that);
    long s_rec = kll_precision(dhat, Hhat);
    long target_width_bits = s_rec + ceil_log2(Int(24) * dhat) + 2;
    if (target_width_bits > opts.effective_ceiling())
      throw precision_exhausted("strategy reconstruction precision exceeds the ceiling");

    // Certified interval evaluation of the Cramer quotients at the value
    // vector, refined until every strategy interval is narrow enough.
    auto strategy_intervals = [&](long p, std::vector<Ival>& xi, std::vector<Ival>& yi) -> bool {
      std::vector<Ival> vint(g.N);
      for (int l = 0; l < g.N; ++l) {
        refined[l] = refined[l].refined(p);
        vint[l] = {refined[l].lo(), refined[l].hi()};
      }
      // entries of the (possibly transposed) local game as intervals
      std::vector<std::vector<Ival>> A(mm, std::vector<Ival>(nn, Ival::point(Rat(0))));
      for (int i = 0; i < mm; ++i)
        for (int j = 0; j < nn; ++j) {
          int gi = flip ? j : i, gj = flip ? i : j;
          const Cell& c = g.cell(kpos, gi, gj);
          Ival e = Ival::point(c.a);
          for (int l = 0; l < g.N; ++l)
            if (sign(c.p[l]) != 0) e = e + Ival::point(c.p[l]) * vint[l];
          if (flip) e = Ival::point(Rat(0)) - e;
          A[i][j] = e;
        }
      // M_B as interval matrix
      std::vector<int> bcols, brows;
      for (int t : *stable_basis) {
        if (t < nn)
          bcols.push_back(t);
        else if (t < nn + mm)
          brows.push_back(t - nn);
      }
      int K = mm + 1;
      std::vector<std::vector<Ival>> M(K, std::vector<Ival>(K, Ival::point(Rat(0))));
      int r = 0;
      for (int j : bcols) {
        for (int i = 0; i < mm; ++i) M[r][i] = Ival::point(Rat(0)) - A[i][j];
        M[r][mm] = Ival::point(Rat(1));
        ++r;
      }
      for (int i : brows) M[r++][i] = Ival::point(Rat(1));
      for (int c = 0; c < mm; ++c) M[r][c] = Ival::point(Rat(1));
      Ival den = det_interval(M);
      if (den.contains_zero()) return false;
      xi.assign(mm, Ival::point(Rat(0)));
      for (int i = 0; i < mm; ++i) {
        auto Mi = M;
        for (int rr = 0; rr < K; ++rr) Mi[rr][i] = Ival::point(Rat(rr == K - 1 ? 1 : 0));
        xi[i] = divide(det_interval(Mi), den);
      }
      // dual (column player) probabilities via the transpose Cramer system
      yi.assign(nn, Ival::point(Rat(0)));
      for (size_t t = 0; t < bcols.size(); ++t) {
        auto Mt = M;
        for (int cc = 0; cc < K; ++cc) Mt[t][cc] = Ival::point(Rat(cc == K - 1 ? 1 : 0));
        yi[bcols[t]] = divide(det_interval(Mt), den);
      }
      Rat wmax(0);
      for (const Ival& v : xi) wmax = std::max(wmax, v.width());
      for (const Ival& v : yi) wmax = std::max(wmax, v.width());
      return wmax <= pow2_rat(-target_width_bits);
    };

    std::vector<Ival> xi, yi;
    long p = std::max<long>(128, target_width_bits / 4);
    bool done = false;
    while (!done) {
      if (p > opts.effective_ceiling())
        throw precision_exhausted("strategy interval refinement exceeded the ceiling");
      done = strategy_intervals(p, xi, yi);
      if (!done) p *= 2;
    }

    auto reconstruct_prob = [&](const Ival& iv) -> AlgebraicNumber {
      Rat mid = (iv.lo + iv.hi) / 2;
      Dyadic approx = Dyadic::round_to_grid(mid, target_width_bits);
      ReconstructionRequest req{approx, dhat, Hhat, s_rec};
      IntPoly q = reconstruct_min_poly(req);
      Rat tol = pow2_rat(-s_rec) / Rat(12 * dhat);
      Rat a = approx.to_rat();
      return AlgebraicNumber(q, a - tol, a + tol);
    };
    // Stability: reconstruct once more from a finer enclosure and require
    // exact polynomial agreement.
    std::vector<Ival> xi2, yi2;
    long p2 = 2 * p;
    while (!strategy_intervals(p2, xi2, yi2)) p2 *= 2;

    std::vector<AlgebraicNumber> xs, ys;
    Ival sumx = Ival::point(Rat(0)), sumy = Ival::point(Rat(0));
    for (int i = 0; i < mm; ++i) {
      AlgebraicNumber a1 = reconstruct_prob(xi[i]);
      AlgebraicNumber a2 = reconstruct_prob(xi2[i]);
      if (!(a1.defining_poly() == a2.defining_poly()))
        throw verification_error("strategy reconstruction stability check failed");
      if (sign(xi2[i].lo) < 0 && sign(xi2[i].hi) < 0)
        throw verification_error("negative strategy probability");
      if (xi2[i].hi > 1 && xi2[i].lo > 1)
        throw verification_error("strategy probability above 1");
      sumx = sumx + xi2[i];
      xs.push_back(a2);
    }
    for (int j = 0; j < nn; ++j) {
      AlgebraicNumber a1 = reconstruct_prob(yi[j]);
      AlgebraicNumber a2 = reconstruct_prob(yi2[j]);
      if (!(a1.defining_poly() == a2.defining_poly()))
        throw verification_error("strategy reconstruction stability check failed");
      sumy = sumy + yi2[j];
      ys.push_back(a2);
    }
    if (!(sumx.lo <= 1 && 1 <= sumx.hi) || !(sumy.lo <= 1 && 1 <= sumy.hi))
      throw verification_error("strategy probabilities do not sum to 1 within certified width");
    if (flip) {
      out.row[kpos] = std::move(ys);
      out.col[kpos] = std::move(xs);
    } else {
      out.row[kpos] = std::move(xs);
      out.col[kpos] = std::move(ys);
    }
  }
  return out;
}

StochasticGame mirror_everett(const StochasticGame& g) {
  if (g.variant != GameVariant::everett) throw invalid_input("mirror_everett: wrong variant");
  StochasticGame out = StochasticGame::empty(GameVariant::everett, g.N);
  for (int k = 0; k < g.N; ++k) {
    out.resize_position(k, g.n[k], g.m[k]);
    for (int i = 0; i < g.m[k]; ++i)
      for (int j = 0; j < g.n[k]; ++j) {
        const Cell& c = g.cell(k, i, j);
        Cell& o = out.cell(k, j, i);
        o.a = c.a;
        o.b = -c.b;
        o.s = c.s;
        o.p = c.p;
      }
  }
  return out;
}

// One-shot dominance: the strategy x guarantees at least v1_k in every local
// game A^k(v1), strictly where v1_k > 0. This is the exact certificate that
// backs the C1 construction after rounding.
bool strategy_certifies_c1(const StochasticGame& g, const std::vector<Rat>& v1,
                           const StationaryStrategy& x) {
  for (int k = 0; k < g.N; ++k) {
    MatrixGame A = local_game(g, k, v1);
    for (int j = 0; j < g.n[k]; ++j) {
      Rat t(0);
      for (int i = 0; i < g.m[k]; ++i) t += x.rows[k][i] * A.at(i, j);
      if (sign(v1[k]) > 0 ? !(t > v1[k]) : !(t >= v1[k])) return false;
    }
  }
  return true;
}

namespace {

std::vector<Rat> c1_point_rec(const StochasticGame& g, const Rat& eps, const BoundProfile& prof,
                              const SolverOptions& opts, int depth) {
  if (g.N == 0) return {};
  if (depth > 64) throw precision_exhausted("C1 recursion too deep");
  // accuracy grid
  long k = 2;
  {
    Rat inv = Rat(1) / eps;
    if (inv > 1) {
      long e = bitsize(Int(inv.get_num())) - bitsize(Int(inv.get_den())) + 1;
      k = std::max(2L, e + 3);
    } else {
      k = 5;
    }
  }
  for (int attempt = 0; attempt < 6; ++attempt, k += 2) {
    if (k > opts.effective_ceiling()) break;
    Dyadic vh = bisect_impl(g, k, prof, g.bitsize_tau(), nullptr);
    // v strictly below the last coordinate of the critical vector
    Rat v = vh.to_rat() - 2 * pow2_rat(-k);
    if (v < -1) v = -1;
    StochasticGame red = reduced_game(g, v);
    std::vector<Rat> z;
    if (red.N == 0) {
      z = {};
    } else {
      // estimated slack delta = ~V(v) - v drives the recursive accuracy
      long kp = k + 4;
      std::vector<Dyadic> w = approx_val_impl(red, kp, prof, std::max(g.bitsize_tau(), k));
      std::vector<Rat> val(g.N);
      for (int i = 0; i + 1 < g.N; ++i) val[i] = w[i].to_rat();
      val[g.N - 1] = v;
      Rat vtilde = solve(local_game(g, g.N - 1, val)).value;
      Rat delta = vtilde - v - pow2_rat(-kp + 1);
      if (sign(delta) <= 0) continue;  // margin vanished; retry finer
      Rat half_delta = delta / 2;
      Rat inner_eps = half_delta < eps ? half_delta : eps;
      z = c1_point_rec(red, inner_eps, prof, opts, depth + 1);
    }
    std::vector<Rat> v1 = z;
    v1.push_back(v);
    if (in_C1(g, v1)) return v1;
  }
  throw precision_exhausted("could not certify a C1 point at the requested accuracy");
}

StationaryStrategy strategies_at(const StochasticGame& g, const std::vector<Rat>& v1) {
  StationaryStrategy x;
  x.rows.resize(g.N);
  for (int k = 0; k < g.N; ++k) x.rows[k] = solve(local_game(g, k, v1)).x;
  return x;
}

Rat round_up_significant(const Rat& x, long L) {
  if (sign(x) == 0) return x;
  // e0 with 2^e0 <= x < 2^(e0+1)
  long e0 = bitsize(Int(x.get_num())) - bitsize(Int(x.get_den()));
  if (pow2_rat(e0) > x) --e0;
  long t = L - 1 - e0;
  Rat scaled = x * pow2_rat(t);
  Int num = scaled.get_num(), den = scaled.get_den();
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return Rat(q) * pow2_rat(-t);
}

// HKM-style rounding: all probabilities except the largest are rounded up to
// L significant dyadic digits, the largest absorbs the slack (and therefore
// moves down). Returns nullopt if the slack went negative.
std::optional<StationaryStrategy> round_strategy(const StationaryStrategy& x, long L) {
  StationaryStrategy out = x;
  for (auto& row : out.rows) {
    size_t imax = 0;
    for (size_t i = 1; i < row.size(); ++i)
      if (row[i] > row[imax]) imax = i;
    Rat sum(0);
    for (size_t i = 0; i < row.size(); ++i) {
      if (i == imax) continue;
      row[i] = round_up_significant(row[i], L);
      sum += row[i];
    }
    if (sum > 1) return std::nullopt;
    row[imax] = Rat(1) - sum;
  }
  return out;
}

}  // namespace

std::vector<Rat> everett_c1_point(const StochasticGame& gn, const Rat& eps, long C,
                                  const SolverOptions& opts) {
  require_normalized_everett(gn);
  if (sign(eps) <= 0) throw invalid_input("eps must be positive");
  BoundProfile prof = everett_bounds(std::max(gn.N, 1), gn.max_actions(), gn.bitsize_tau(), C);
  return c1_point_rec(gn, eps, prof, opts, 0);
}

EverettStrategyCertificate eps_optimal_strategy_everett_certified(const StochasticGame& g,
                                                                  const Rat& eps, long C,
                                                                  const SolverOptions& opts) {
  validate(g);
  if (g.variant != GameVariant::everett)
    throw invalid_input("eps_optimal_strategy_everett: wrong variant");
  if (sign(eps) <= 0) throw invalid_input("eps must be positive");
  auto [gn, scale] = normalize(g);
  Rat eps_n = eps / scale;
  if (eps_n > Rat(1, 2)) eps_n = Rat(1, 2);

  EverettStrategyCertificate cert;
  cert.normalized = gn;
  cert.mirror = mirror_everett(gn);
  cert.c1_point = everett_c1_point(gn, eps_n / 2, C, opts);
  cert.c1_point_mirror = everett_c1_point(cert.mirror, eps_n / 2, C, opts);

  StationaryStrategy x = strategies_at(gn, cert.c1_point);
  StationaryStrategy y = strategies_at(cert.mirror, cert.c1_point_mirror);

  auto round_verified = [&](const StochasticGame& game, const std::vector<Rat>& point,
                            const StationaryStrategy& s) {
    for (long L = 8; L <= 4096; L *= 2) {
      auto rounded = round_strategy(s, L);
      if (rounded && rounded->valid() && strategy_certifies_c1(game, point, *rounded))
        return *rounded;
    }
    return s;  // exact rationals already certify
  };
  cert.x = round_verified(gn, cert.c1_point, x);
  cert.y = round_verified(cert.mirror, cert.c1_point_mirror, y);
  return cert;
}

std::pair<StationaryStrategy, StationaryStrategy> eps_optimal_strategy_everett(
    const StochasticGame& g, const Rat& eps, long C, const SolverOptions& opts) {
  EverettStrategyCertificate cert = eps_optimal_strategy_everett_certified(g, eps, C, opts);
  return {cert.x, cert.y};
}

}  // namespace sgsolve
