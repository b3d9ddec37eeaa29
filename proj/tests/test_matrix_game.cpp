#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sgsolve/matrix_game.hpp"
#include "sgsolve/param_game.hpp"
#include "test_util.hpp"

using namespace sgsolve;
using testutil::Q;

namespace {
MatrixGame make(std::initializer_list<std::initializer_list<long>> rows) {
  int m = static_cast<int>(rows.size());
  int n = static_cast<int>(rows.begin()->size());
  MatrixGame g(m, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (long v : r) g.at(i, j++) = Q(v);
    ++i;
  }
  return g;
}
}  // namespace

TEST_CASE("matching pennies") {
  MatrixGame g = make({{1, -1}, {-1, 1}});
  GameSolution s = solve(g);
  CHECK(s.value == Q(0));
  CHECK(s.x == std::vector<Rat>{Q(1, 2), Q(1, 2)});
  CHECK(s.y == std::vector<Rat>{Q(1, 2), Q(1, 2)});
  CHECK(s.certificate_holds(g));
}

TEST_CASE("2x2 mixed game") {
  MatrixGame g = make({{3, 0}, {1, 2}});
  GameSolution s = solve(g);
  CHECK(s.value == Q(3, 2));
  CHECK(s.x == std::vector<Rat>{Q(1, 4), Q(3, 4)});
  CHECK(s.y == std::vector<Rat>{Q(1, 2), Q(1, 2)});
  GameSolution e = solve_by_basis_enumeration(g);
  CHECK(e.value == Q(3, 2));
  CHECK(e.certificate_holds(g));
}

TEST_CASE("1x1 and saddle points") {
  CHECK(solve(make({{5}})).value == Q(5));
  CHECK(solve_by_basis_enumeration(make({{0}})).value == Q(0));
  // saddle at row 1, col 1 by dominance
  MatrixGame g = make({{2, 3}, {0, 1}});
  CHECK(solve(g).value == Q(2));
  CHECK(solve_by_basis_enumeration(g).value == Q(2));
}

TEST_CASE("tall games use the dual") {
  MatrixGame g = make({{3}, {1}, {7}});
  GameSolution s = solve(g);
  CHECK(s.value == Q(7));
  CHECK(s.x[2] == Q(1));
  MatrixGame g2 = make({{1, 0}, {0, 1}, {1, 1}});
  GameSolution s2 = solve(g2);
  CHECK(s2.value == Q(1));  // row 3 dominates
  CHECK(s2.certificate_holds(g2));
}

TEST_CASE("solve equals enumeration on random games") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 200; ++t) {
    MatrixGame g = testutil::random_matrix_game(rng, 4, 6);
    GameSolution a = solve(g);
    GameSolution b = solve_by_basis_enumeration(g);
    CHECK(a.value == b.value);
    CHECK(a.certificate_holds(g));
    CHECK(b.certificate_holds(g));
  }
}

TEST_CASE("value distance bound") {
  MatrixGame a = make({{3, 0}, {1, 2}});
  CHECK(value_distance_bound(a, a) == Q(0));
  CHECK(value_distance_bound(make({{1}}), make({{0}})) == Q(1));
  MatrixGame b = a;
  b.at(1, 1) = Q(5, 2);
  CHECK(value_distance_bound(a, b) == Q(1, 2));
  Rat va = solve(a).value, vb = solve(b).value;
  CHECK(abs(va - vb) <= Q(1, 2));
  MatrixGame c(2, 3);
  CHECK_THROWS_AS(value_distance_bound(a, c), invalid_input);
}

TEST_CASE("Lipschitz property on random perturbation pairs") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 100; ++t) {
    MatrixGame a = testutil::random_matrix_game(rng, 4, 6);
    MatrixGame b = a;
    for (Rat& e : b.a)
      if (rng() & 1) e += testutil::random_rat(rng, 4);
    Rat bound = value_distance_bound(a, b);
    CHECK(abs(solve(a).value - solve(b).value) <= bound);
  }
}

TEST_CASE("positive scaling preserves strategies") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 50; ++t) {
    MatrixGame a = testutil::random_matrix_game(rng, 4, 6);
    Rat c = abs(testutil::random_rat(rng, 5));
    if (sign(c) == 0) continue;
    MatrixGame b = a;
    for (Rat& e : b.a) e *= c;
    GameSolution sa = solve(a), sb = solve(b);
    CHECK(sb.value == c * sa.value);
    CHECK(sa.x == sb.x);
    CHECK(sa.y == sb.y);
  }
}

TEST_CASE("parameterized game agrees with the solver across many parameters") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    int m = 1 + static_cast<int>(rng() % 3), n = 1 + static_cast<int>(rng() % 3);
    std::vector<std::vector<Rat>> C(m, std::vector<Rat>(n)), D(m, std::vector<Rat>(n));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) {
        C[i][j] = testutil::random_rat(rng, 5);
        D[i][j] = abs(testutil::random_rat(rng, 3));
      }
    ParamMatrixGame pg(C, D);
    // sweep a dyadic walk; consecutive values nearby so the bundle cache hits
    Dyadic w(Int(-1));
    for (int step = 0; step < 60; ++step) {
      w = w + Dyadic(Int(1), -5);
      Frac f = pg.value_at(w);
      MatrixGame inst(m, n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) inst.at(i, j) = C[i][j] + D[i][j] * w.to_rat();
      CHECK(f.to_rat() == solve(inst).value);
    }
  }
}

TEST_CASE("frac comparison helpers") {
  Frac f{Int(3), Int(4)};
  CHECK(cmp_abs_dyadic(f, Dyadic(Int(1))) < 0);
  CHECK(cmp_abs_dyadic(f, Dyadic(Int(3), -2)) == 0);
  CHECK(cmp_abs_dyadic(f, Dyadic(Int(1), -1)) > 0);
  Frac g{Int(-3), Int(4)};
  CHECK(cmp_abs(f, g) == 0);
}
