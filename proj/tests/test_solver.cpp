#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sgsolve/degree_lab.hpp"
#include "sgsolve/solver.hpp"
#include "test_util.hpp"

using namespace sgsolve;
using testutil::P;
using testutil::Q;

namespace {
StochasticGame diag(std::initializer_list<Rat> alphas, Rat beta = Q(1, 2)) {
  return diagonal_game({std::vector<Rat>(alphas), beta});
}

StochasticGame everett_image(const StochasticGame& shapley) {
  auto [gn, scale] = normalize(shapley_to_everett(shapley));
  REQUIRE(scale == Q(1));
  return gn;
}

StochasticGame one_cell_everett(Rat b, Rat s, Rat pself) {
  StochasticGame g = StochasticGame::empty(GameVariant::everett, 1);
  g.resize_position(0, 1, 1);
  Cell& c = g.cell(0, 0, 0);
  c.b = b;
  c.s = s;
  c.p[0] = pself;
  return g;
}
}  // namespace

TEST_CASE("approx_bisect on the diagonal instance") {
  StochasticGame e = everett_image(diag({Q(1, 4)}));
  BoundProfile prof = shapley_bounds(1, 1, e.bitsize_tau());
  Dyadic v = approx_bisect(e, 4, prof);
  CHECK(abs(v.to_rat() - Q(1, 2)) <= Q(1, 16));
  Dyadic v10 = approx_bisect(e, 10, prof);
  CHECK(abs(v10.to_rat() - Q(1, 2)) <= Q(1, 1024));
}

TEST_CASE("approx_bisect zero and negative branches") {
  StochasticGame z = one_cell_everett(Q(0), Q(1, 2), Q(1, 2));
  BoundProfile prof = shapley_bounds(1, 1, 4);
  CHECK(approx_bisect(z, 8, prof).is_zero());

  StochasticGame neg = one_cell_everett(Q(-1, 2), Q(1), Q(0));
  Dyadic v = approx_bisect(neg, 8, prof);
  CHECK(sign(v.to_rat()) < 0);
  CHECK(abs(v.to_rat() - Q(-1, 2)) <= Q(1, 256));
}

TEST_CASE("approx_bisect branch emulation matches the idealized bisection") {
  // v* = 1/2 exactly; the idealized endpoints are fully determined.
  StochasticGame e = everett_image(diag({Q(1, 4)}));
  BoundProfile prof = shapley_bounds(1, 1, e.bitsize_tau());
  std::vector<std::pair<Dyadic, Dyadic>> trace;
  long k = 8;
  approx_bisect(e, k, prof, &trace);
  REQUIRE(trace.size() == static_cast<size_t>(k));
  // idealized: start (0,1); v=1/2 equals v* -> else-branch keeps v_r=1/2;
  // afterwards every midpoint is below v*, moving v_l up
  CHECK(trace[0].first.to_rat() == Q(0));
  CHECK(trace[0].second.to_rat() == Q(1));
  CHECK(trace[1].second.to_rat() == Q(1, 2));
  Rat vl(0);
  for (size_t i = 2; i < trace.size(); ++i) {
    vl = (vl + Q(1, 2)) / 2;
    CHECK(trace[i].first.to_rat() == vl);
    CHECK(trace[i].second.to_rat() == Q(1, 2));
    // endpoints always bracket v*
    CHECK(trace[i].first.to_rat() <= Q(1, 2));
    CHECK(trace[i].second.to_rat() >= Q(1, 2));
  }
}

TEST_CASE("approx_val base cases and independence") {
  StochasticGame empty = StochasticGame::empty(GameVariant::everett, 0);
  BoundProfile prof = shapley_bounds(1, 1, 1);
  CHECK(approx_val(empty, 8, prof).empty());

  StochasticGame e = everett_image(diag({Q(1, 4)}));
  auto v1 = approx_val(e, 5, shapley_bounds(1, 1, e.bitsize_tau()));
  REQUIRE(v1.size() == 1);
  CHECK(abs(v1[0].to_rat() - Q(1, 2)) <= Q(1, 32));

  // two independent copies of the diagonal instance
  StochasticGame two = StochasticGame::empty(GameVariant::everett, 2);
  for (int k = 0; k < 2; ++k) {
    two.resize_position(k, 1, 1);
    Cell& c = two.cell(k, 0, 0);
    c.b = Q(1, 2);
    c.s = Q(1, 2);
    c.p[k] = Q(1, 2);
  }
  BoundProfile prof2 = shapley_bounds(2, 1, two.bitsize_tau());
  long k = 8;
  auto v2 = approx_val(two, k, prof2);
  REQUIRE(v2.size() == 2);
  CHECK(abs(v2[0].to_rat() - Q(1, 2)) <= pow2_rat(-k));
  CHECK(abs(v2[1].to_rat() - Q(1, 2)) <= pow2_rat(-k));
}

TEST_CASE("solve_shapley_exact on the diagonal instances") {
  SolveResult r1 = solve_shapley_exact(diag({Q(1, 4)}));
  REQUIRE(r1.values.size() == 1);
  CHECK(r1.values[0].defining_poly() == P({-1, 2}));
  CHECK(r1.values[0].is_rational());
  CHECK(r1.values[0].rational_value() == Q(1, 2));

  SolveResult r2 = solve_shapley_exact(diag({Q(1, 8), Q(1, 4)}));
  CHECK(r2.values[0].defining_poly() == P({-1, 6, 24}));
  CHECK(r2.values[0].lo() >= Q(0));
  CHECK(r2.values[0].hi() <= Q(1, 4));

  // immediate-termination game with rational value
  StochasticGame imm = StochasticGame::empty(GameVariant::shapley, 1);
  imm.resize_position(0, 1, 1);
  imm.cell(0, 0, 0) = {Q(3, 4), Q(0), Q(1), {Q(0)}};
  SolveResult r3 = solve_shapley_exact(imm);
  CHECK(r3.values[0].defining_poly() == P({-3, 4}));
  CHECK(r3.values[0].rational_value() == Q(3, 4));
}

TEST_CASE("solve result invariants") {
  SolveResult r = solve_shapley_exact(diag({Q(1, 8), Q(1, 4)}));
  // the dyadic approximation lies inside the refined isolating interval
  AlgebraicNumber ref = r.values[0].refined(r.approx_bits + 2);
  Rat a = r.approx_values[0].to_rat();
  CHECK(a >= ref.lo() - pow2_rat(-r.approx_bits + 1));
  CHECK(a <= ref.hi() + pow2_rat(-r.approx_bits + 1));
  CHECK(r.values[0].degree() <= r.audit.profile.degree_bound);
  CHECK(!r.audit.to_text().empty());
  // F_m divisibility ground truth
  IntPoly fm = F_m_polynomial({Q(1, 8), Q(1, 4)}, Q(2));
  CHECK(IntPoly::divide_exact(fm, r.values[0].defining_poly()).has_value());
}

TEST_CASE("eq(5) residual: interval through the fixed-point equation contains 0") {
  std::vector<Rat> alphas{Q(1, 8), Q(1, 4)};
  SolveResult r = solve_shapley_exact(diag({alphas[0], alphas[1]}));
  AlgebraicNumber v = r.values[0].refined(80);
  // sum_i v/(alpha_i + v/2) - 1 evaluated on the interval
  Rat lo_acc(0), hi_acc(0);
  for (const Rat& al : alphas) {
    // v/(al + v/2) is increasing in v > 0: evaluate at both ends
    Rat flo = v.lo() / (al + v.lo() / 2);
    Rat fhi = v.hi() / (al + v.hi() / 2);
    lo_acc += flo;
    hi_acc += fhi;
  }
  CHECK(lo_acc - 1 <= Q(0));
  CHECK(hi_acc - 1 >= Q(0));
}

TEST_CASE("eps-optimal shapley strategies") {
  // single action: trivially optimal
  auto [x1, y1] = eps_optimal_strategy_shapley(diag({Q(1, 4)}), Q(1, 8));
  CHECK(x1.rows[0] == std::vector<Rat>{Q(1)});
  CHECK(y1.rows[0] == std::vector<Rat>{Q(1)});

  // symmetric matrix game with immediate termination
  StochasticGame sym = StochasticGame::empty(GameVariant::shapley, 1);
  sym.resize_position(0, 2, 2);
  sym.cell(0, 0, 0) = {Q(1), Q(0), Q(1), {Q(0)}};
  sym.cell(0, 0, 1) = {Q(-1), Q(0), Q(1), {Q(0)}};
  sym.cell(0, 1, 0) = {Q(-1), Q(0), Q(1), {Q(0)}};
  sym.cell(0, 1, 1) = {Q(1), Q(0), Q(1), {Q(0)}};
  auto [x2, y2] = eps_optimal_strategy_shapley(sym, Q(1, 64));
  CHECK(x2.rows[0] == std::vector<Rat>{Q(1, 2), Q(1, 2)});
  CHECK(y2.rows[0] == std::vector<Rat>{Q(1, 2), Q(1, 2)});

  // 2-action diagonal: strategies of the local game at an approximate value;
  // verify the guarantee directly: value of x against any column >= v* - eps
  StochasticGame d2 = diag({Q(1, 8), Q(1, 4)});
  Rat eps = Q(1, 256);
  auto [x3, y3] = eps_optimal_strategy_shapley(d2, eps);
  CHECK(x3.valid());
  CHECK(y3.valid());
  // v* is the positive root of 24x^2+6x-1; check one-shot dominance at a
  // high-precision enclosure of v*
  SolveResult sr = solve_shapley_exact(d2);
  AlgebraicNumber v = sr.values[0].refined(50);
  MatrixGame A = local_game(d2, 0, {v.hi()});
  for (int j = 0; j < A.n; ++j) {
    Rat t(0);
    for (int i = 0; i < A.m; ++i) t += x3.rows[0][i] * A.at(i, j);
    CHECK(t >= v.lo() - eps);
  }
}

TEST_CASE("exact optimal strategies") {
  // m = 1: probability one
  ExactStrategies s1 = exact_optimal_strategy_shapley(diag({Q(1, 4)}));
  REQUIRE(s1.row[0].size() == 1);
  CHECK(s1.row[0][0].defining_poly() == P({-1, 1}));

  // symmetric game: probabilities 1/2
  StochasticGame sym = StochasticGame::empty(GameVariant::shapley, 1);
  sym.resize_position(0, 2, 2);
  sym.cell(0, 0, 0) = {Q(1), Q(0), Q(1), {Q(0)}};
  sym.cell(0, 0, 1) = {Q(-1), Q(0), Q(1), {Q(0)}};
  sym.cell(0, 1, 0) = {Q(-1), Q(0), Q(1), {Q(0)}};
  sym.cell(0, 1, 1) = {Q(1), Q(0), Q(1), {Q(0)}};
  ExactStrategies s2 = exact_optimal_strategy_shapley(sym);
  CHECK(s2.row[0][0].defining_poly() == P({-1, 2}));
  CHECK(s2.row[0][1].defining_poly() == P({-1, 2}));

  // 2-action diagonal: p_i = v*/(alpha_i + v*/2), algebraic of degree 2;
  // p_2 = 1 - p_1 checked exactly through the reflected polynomial
  ExactStrategies s3 = exact_optimal_strategy_shapley(diag({Q(1, 8), Q(1, 4)}));
  REQUIRE(s3.row[0].size() == 2);
  const AlgebraicNumber& p1 = s3.row[0][0];
  const AlgebraicNumber& p2 = s3.row[0][1];
  CHECK(p1.degree() == 2);
  CHECK(p2.degree() == 2);
  CHECK(p1.defining_poly() == P({4, -7, 1}));  // y^2 - 7y + 4
  CHECK(p2.defining_poly() == P({-2, 5, 1}));  // y^2 + 5y - 2
  // reflection: minimal polynomial of 1 - p1 equals p2's
  IntPoly reflected = p1.defining_poly().shift_arg(Q(1)).scale_arg(Q(-1));
  CHECK(reflected == p2.defining_poly());
  // the intervals are consistent with p1 + p2 = 1
  AlgebraicNumber q1 = p1.refined(30), q2 = p2.refined(30);
  CHECK(q1.lo() + q2.lo() <= Q(1));
  CHECK(q1.hi() + q2.hi() >= Q(1));
}

TEST_CASE("exact solve is consistent with the oracle on random single-position games") {
  std::mt19937_64 rng(97);
  for (int t = 0; t < 10; ++t) {
    StochasticGame g = testutil::random_shapley_game(rng, 1, 2, 3);
    SolveResult r = solve_shapley_exact(g);
    std::vector<Rat> oracle = value_iterate_oracle(g, 40);
    AlgebraicNumber ref = r.values[0].refined(44);
    CHECK(oracle[0] >= ref.lo() - pow2_rat(-40));
    CHECK(oracle[0] <= ref.hi() + pow2_rat(-40));
    CHECK(r.values[0].degree() <= r.audit.profile.degree_bound);
  }
}

TEST_CASE("solve_everett equals solve_shapley_exact on converted instances") {
  StochasticGame d = diag({Q(1, 8), Q(1, 4)});
  SolveResult rs = solve_shapley_exact(d);
  SolveResult re = solve_everett(shapley_to_everett(d), 2);
  CHECK(re.values[0].defining_poly() == rs.values[0].defining_poly());
  CHECK(AlgebraicNumber::equal(re.values[0], rs.values[0]));
}

TEST_CASE("solve_everett trivial games") {
  // all b = 1, s = 1: value 1
  StochasticGame g1 = one_cell_everett(Q(1), Q(1), Q(0));
  SolveResult r1 = solve_everett(g1, 2);
  CHECK(r1.values[0].defining_poly() == P({-1, 1}));
  // no termination: value 0
  StochasticGame g0 = one_cell_everett(Q(0), Q(0), Q(1));
  SolveResult r0 = solve_everett(g0, 2);
  CHECK(r0.values[0].rational_value() == Q(0));
}

TEST_CASE("solve_gillette on a single absorbing position") {
  StochasticGame g = StochasticGame::empty(GameVariant::gillette, 1);
  g.resize_position(0, 1, 1);
  g.cell(0, 0, 0) = {Q(1), Q(0), Q(0), {Q(1)}};
  SolveResult r = solve_gillette(g, 2);
  CHECK(!r.audit.approximate_only);
  CHECK(r.values[0].defining_poly() == P({-1, 1}));
}

TEST_CASE("solve_gillette matches everett on a converted diagonal instance") {
  StochasticGame e = everett_image(diag({Q(1, 4)}));
  StochasticGame g = everett_to_gillette(e);
  SolveResult r = solve_gillette(g, 2);
  CHECK(!r.audit.approximate_only);
  // original position values 1/2; the appended absorbing positions carry
  // their recurring rewards
  CHECK(r.values[0].rational_value() == Q(1, 2));
  CHECK(r.audit.lambda_ladder.size() >= 2);
}

TEST_CASE("everett C1 point and certified strategies") {
  StochasticGame e = everett_image(diag({Q(1, 8), Q(1, 4)}));
  std::vector<Rat> v1 = everett_c1_point(e, Q(1, 16), 2);
  CHECK(in_C1(e, v1));
  // within eps of the value
  SolveResult sr = solve_everett(e, 2);
  AlgebraicNumber v = sr.values[0].refined(30);
  CHECK(v1[0] <= v.hi());
  CHECK(v1[0] >= v.lo() - Q(1, 16));

  auto [x, y] = eps_optimal_strategy_everett(e, Q(1, 16), 2);
  CHECK(x.valid());
  CHECK(y.valid());

  // all-b=1 game: any strategy optimal, C1 verification passes
  StochasticGame g1 = one_cell_everett(Q(1), Q(1), Q(0));
  auto [x1, y1] = eps_optimal_strategy_everett(g1, Q(1, 8), 2);
  CHECK(x1.rows[0] == std::vector<Rat>{Q(1)});

  // value-0 game with no stopping: v1 = 0 is in C1
  StochasticGame g0 = one_cell_everett(Q(0), Q(0), Q(1));
  std::vector<Rat> z = everett_c1_point(g0, Q(1, 8), 2);
  CHECK(in_C1(g0, z));
}
