#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sgsolve/algebraic.hpp"
#include "test_util.hpp"

using namespace sgsolve;
using testutil::P;
using testutil::Q;

TEST_CASE("rational parsing and canonical form") {
  CHECK(parse_rat("3/6") == Q(1, 2));
  CHECK(parse_rat("-4/2") == Q(-2));
  CHECK(rat_to_string(Q(1, 2)) == "1/2");
  CHECK(rat_to_string(Q(5)) == "5");
  CHECK_THROWS_AS(parse_rat("1/0"), invalid_input);
  CHECK_THROWS_AS(parse_rat("x"), invalid_input);
  // canonical form after arithmetic
  Rat r = Q(2, 4) + Q(1, 4);
  CHECK(r.get_num() == 3);
  CHECK(r.get_den() == 4);
}

TEST_CASE("dyadic arithmetic and grid rounding") {
  Dyadic a(Int(3), -2);  // 3/4
  CHECK(a.to_rat() == Q(3, 4));
  CHECK((a + a).to_rat() == Q(3, 2));
  CHECK((a * a).to_rat() == Q(9, 16));
  CHECK((-a).to_rat() == Q(-3, 4));
  CHECK(Dyadic::round_to_grid(Q(1, 3), 3).to_rat() == Q(3, 8));
  CHECK(Dyadic::round_to_grid(Q(-1, 3), 3).to_rat() == Q(-3, 8));
  // ties away from zero
  CHECK(Dyadic::round_to_grid(Q(3, 16), 3).to_rat() == Q(1, 4));
  CHECK(Dyadic::round_to_grid(Q(-3, 16), 3).to_rat() == Q(-1, 4));
  CHECK(!Dyadic::from_rat_exact(Q(1, 3)));
  CHECK(Dyadic::from_rat_exact(Q(5, 8))->to_rat() == Q(5, 8));
  // mantissa odd or zero
  Dyadic c(Int(12), 0);
  CHECK(c.mantissa() == 3);
  CHECK(c.exponent() == 2);
}

TEST_CASE("certified log2 bounds") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    Rat x = testutil::random_rat(rng, 20, false);
    auto [lo, hi] = log2_bounds(x);
    CHECK(hi - lo <= Q(1, 1 << 20));
    // 2^lo <= x <= 2^hi checked through integer powers of a common grid
    // (spot check via doubling): x < 2^ceil(hi)+1 and x > 2^floor(lo)-1.
    long hic = static_cast<long>(std::ceil(hi.get_d()));
    long lof = static_cast<long>(std::floor(lo.get_d()));
    CHECK(x <= pow2_rat(hic));
    CHECK(x >= pow2_rat(lof));
  }
  CHECK(ceil_log2(Int(1)) == 0);
  CHECK(ceil_log2(Int(2)) == 1);
  CHECK(ceil_log2(Int(3)) == 2);
  CHECK(ceil_log2(Int(132)) == 8);
}

TEST_CASE("content") {
  CHECK(content(P({3, 9, 6})) == 3);        // 6x^2 + 9x + 3
  CHECK(content(P({-2, 0, 1})) == 1);       // x^2 - 2
  CHECK(content(P({-1, 6, 24})) == 1);      // 24x^2 + 6x - 1
  CHECK_THROWS_AS(content(IntPoly()), invalid_input);
}

TEST_CASE("height and length bound") {
  auto [h1, l1] = height_and_length(P({-2, 0, 1}));
  CHECK(h1 == 2);
  CHECK(l1 == Q(3));  // ceil(sqrt(5)) = 3
  auto [h2, l2] = height_and_length(P({5}));
  CHECK(h2 == 5);
  CHECK(l2 == Q(5));
  auto [h3, l3] = height_and_length(P({-1, 6, 24}));
  CHECK(h3 == 24);
  CHECK(l3 <= Q(3 * 25));  // <= (d+1) * height
  CHECK(l3 * l3 >= Q(24 * 24 + 36 + 1));
  CHECK_THROWS_AS(height_and_length(IntPoly()), invalid_input);
}

TEST_CASE("square-free part") {
  // (x-1)^2 -> x - 1
  CHECK(square_free_part(P({1, -2, 1})) == P({-1, 1}));
  CHECK(square_free_part(P({-2, 0, 1})) == P({-2, 0, 1}));
  // x^3 - x^2 -> x^2 - x
  CHECK(square_free_part(P({0, 0, -1, 1})) == P({0, -1, 1}));
  // divides exactly over Q
  IntPoly p = P({1, -2, 1}) * P({-2, 0, 1});
  IntPoly sf = square_free_part(p);
  CHECK(IntPoly::divide_exact(p, sf).has_value());
}

TEST_CASE("shift and scale") {
  CHECK(shift_poly(P({-2, 0, 1}), Q(0)) == P({-2, 0, 1}));
  CHECK(shift_poly(P({-1, 1}), Q(1)) == P({0, 1}));      // x - 1 shifted by 1 -> x
  CHECK(shift_poly(P({-1, 2}), Q(1, 2)) == P({0, 1}));   // 2x - 1 shifted by 1/2 -> x
  CHECK(scale_poly_arg(P({-2, 0, 1}), Q(1)) == P({-2, 0, 1}));
  CHECK(scale_poly_arg(P({-1, 1}), Q(3)) == P({-3, 1}));     // root 1 -> 3
  CHECK(scale_poly_arg(P({-1, 2}), Q(1, 2)) == P({-1, 4}));  // root 1/2 -> 1/4
  CHECK_THROWS_AS(scale_poly_arg(P({-1, 1}), Q(0)), invalid_input);
  // shift then shift back gives an associate of the original
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    std::vector<Int> cs;
    int deg = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i <= deg; ++i) cs.emplace_back(static_cast<long>(rng() % 41) - 20);
    IntPoly p(std::move(cs));
    if (p.is_zero() || p.degree() < 1) continue;
    Rat c = testutil::random_rat(rng, 6);
    IntPoly back = shift_poly(shift_poly(p, c), -c);
    CHECK(back == p.primitive_part());
  }
}

TEST_CASE("univariate root bounds") {
  RootBounds rb = univariate_root_bounds(P({-2, 0, 1}));
  CHECK(rb.lower == Q(1, 4));
  CHECK(rb.upper == Q(4));
  RootBounds rb2 = univariate_root_bounds(P({-1, 2}));
  CHECK(rb2.lower == Q(1, 4));
  CHECK(rb2.upper == Q(4));
  RootBounds rb3 = univariate_root_bounds(P({-1, 6, 24}));
  CHECK(rb3.lower == Q(1, 48));
  CHECK(rb3.upper == Q(48));
  CHECK(sign(rb3.separation) > 0);
  CHECK_THROWS_AS(univariate_root_bounds(P({5})), invalid_input);
}

TEST_CASE("root isolation examples") {
  auto roots = isolate_real_roots(P({-2, 0, 1}));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].hi() < roots[1].lo());
  CHECK(roots[0].lo() >= Q(-4));
  // refine and compare against sqrt(2) decimals
  AlgebraicNumber r1 = roots[1].refined(40);
  CHECK(r1.lo() <= Q(14142135624L, 10000000000L));
  CHECK(r1.hi() >= Q(14142135623L, 10000000000L));

  CHECK(isolate_real_roots(P({1, 0, 1})).empty());  // x^2 + 1

  auto r = isolate_real_roots(P({-1, 2}));
  REQUIRE(r.size() == 1);
  CHECK(r[0].is_rational());
  CHECK(r[0].rational_value() == Q(1, 2));
  CHECK(r[0].defining_poly() == P({-1, 2}));
}

TEST_CASE("root isolation matches the independent oracle on random polynomials") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    std::vector<Int> cs;
    int deg = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i <= deg; ++i) cs.emplace_back(static_cast<long>(rng() % 101) - 50);
    IntPoly p(std::move(cs));
    if (p.is_zero() || p.degree() < 1) continue;
    auto roots = isolate_real_roots(p);
    CHECK(static_cast<int>(roots.size()) == testutil::oracle_count_real_roots(p));
    for (size_t i = 0; i + 1 < roots.size(); ++i) CHECK(roots[i].hi() <= roots[i + 1].lo());
  }
}

TEST_CASE("refinement") {
  AlgebraicNumber sqrt2(P({-2, 0, 1}), Q(1), Q(2));
  AlgebraicNumber r = refine(sqrt2, 2);
  CHECK(r.width() <= Q(1, 4));
  CHECK(r.lo() >= Q(1));
  CHECK(r.hi() <= Q(2));
  CHECK(r.defining_poly() == sqrt2.defining_poly());

  AlgebraicNumber rat = AlgebraicNumber::from_rational(Q(1, 2));
  CHECK(refine(rat, 100).width() == Q(0));

  // golden ratio vs its decimal expansion
  AlgebraicNumber phi(P({-1, -1, 1}), Q(1), Q(2));
  AlgebraicNumber rp = refine(phi, 10);
  CHECK(rp.width() <= Q(1, 1024));
  CHECK(rp.lo() <= Q(16180339888L, 10000000000L));
  CHECK(rp.hi() >= Q(16180339887L, 10000000000L));
  // refinement keeps the root: sign change or point
  CHECK(rp.defining_poly().sign_at(rp.lo()) * rp.defining_poly().sign_at(rp.hi()) < 0);
}

TEST_CASE("algebraic number invariants and equality") {
  AlgebraicNumber a(P({-2, 0, 1}), Q(1), Q(2));
  AlgebraicNumber b(P({-2, 0, 1}), Q(5, 4), Q(3, 2));
  CHECK(AlgebraicNumber::equal(a, b));
  AlgebraicNumber c(P({-2, 0, 1}), Q(-2), Q(-1));
  CHECK(!AlgebraicNumber::equal(a, c));
  CHECK(a.sgn() == 1);
  CHECK(c.sgn() == -1);
  // scaled/shifted
  AlgebraicNumber d = a.scaled(Q(2));
  CHECK(d.defining_poly() == P({-8, 0, 1}));  // root 2*sqrt(2): x^2 - 8
  AlgebraicNumber e = a.shifted(Q(1));
  CHECK(e.defining_poly() == P({-1, -2, 1}));  // (x-1)^2 - 2
  // non-isolating interval rejected
  CHECK_THROWS_AS(AlgebraicNumber(P({-2, 0, 1}), Q(-2), Q(2)), invalid_input);
}

TEST_CASE("interval evaluation encloses exact values") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<Int> cs;
    int deg = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i <= deg; ++i) cs.emplace_back(static_cast<long>(rng() % 21) - 10);
    IntPoly p(std::move(cs));
    if (p.is_zero()) continue;
    Rat lo = testutil::random_rat(rng, 6);
    Rat hi = lo + abs(testutil::random_rat(rng, 4));
    auto [elo, ehi] = p.eval_interval(lo, hi);
    for (int s = 0; s <= 4; ++s) {
      Rat x = lo + (hi - lo) * Q(s, 4);
      Rat v = p.eval(x);
      CHECK(v >= elo);
      CHECK(v <= ehi);
    }
  }
}
