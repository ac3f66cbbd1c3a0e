#include <stdexcept>

#include "doctest.h"
#include "szpiro/weierstrass.hpp"

using namespace szpiro;

namespace {
Rational Q(long n, long d = 1) { return make_rational(n, d); }
}  // namespace

TEST_SUITE("weierstrass") {

TEST_CASE("invariants of y^2 + y = x^3 - x^2 - 10x - 20") {
  WeierstrassModel m(0, -1, 1, -10, -20);
  auto inv = m.invariants();
  CHECK(inv.b2 == -4);
  CHECK(inv.b4 == -20);
  CHECK(inv.b6 == -79);
  CHECK(inv.b8 == -21);
  CHECK(inv.c4 == 496);
  CHECK(inv.c6 == 20008);
  CHECK(inv.delta == -161051);  // -11^5
  CHECK(inv.j == Rational(-122023936, 161051));
  CHECK(m.delta() == -161051);
}

TEST_CASE("invariants of y^2 + y = x^3 - x") {
  WeierstrassModel m(0, 0, 1, -1, 0);
  auto inv = m.invariants();
  CHECK(inv.b2 == 0);
  CHECK(inv.b4 == -2);
  CHECK(inv.b6 == 1);
  CHECK(inv.b8 == -1);
  CHECK(inv.c4 == 48);
  CHECK(inv.c6 == -216);
  CHECK(inv.delta == 37);
  CHECK(inv.j == Rational(110592, 37));
}

TEST_CASE("invariants of y^2 = x^3 - x and y^2 = x^3 + 1") {
  WeierstrassModel m(0, 0, 0, -1, 0);
  auto inv = m.invariants();
  CHECK(inv.c4 == 48);
  CHECK(inv.c6 == 0);
  CHECK(inv.delta == 64);
  CHECK(inv.j == Rational(1728));

  WeierstrassModel e(0, 0, 0, 0, 1);
  auto inv2 = e.invariants();
  CHECK(inv2.c4 == 0);
  CHECK(inv2.c6 == -864);
  CHECK(inv2.delta == -432);
  CHECK(inv2.j == 0);
}

TEST_CASE("singular models are rejected") {
  CHECK_THROWS_AS(WeierstrassModel(0, 0, 0, 0, 0), SingularModelError);
  CHECK_THROWS_AS(WeierstrassModel(0, 1, 0, 0, 0), SingularModelError);
  CHECK(discriminant_of(std::array<Integer, 5>{0, 1, 0, 0, 0}) == 0);
  std::array<Rational, 5> bad{Q(0), Q(0), Q(0), Q(0), Q(0)};
  CHECK_THROWS_AS(RationalModel{bad}, SingularModelError);
}

TEST_CASE("scaling transform divides coefficients by powers of u") {
  WeierstrassModel m(0, 0, 0, -1, 0);
  auto out = transform(m, Isomorphism::scaling(Q(2)));
  CHECK(out.coefficients()[3] == Q(-1, 16));
  CHECK(out.delta() == Q(1, 64));  // 64 / 2^12
  CHECK(out.j() == Q(1728));
}

TEST_CASE("transform round trip and composition") {
  RationalModel m = WeierstrassModel(0, -1, 1, -10, -20);
  Isomorphism g{Q(2, 3), Q(1, 2), Q(-1), Q(3)};
  auto moved = transform(m, g);
  CHECK(transform(moved, g.inverse()) == m);

  Isomorphism g1{Q(2), Q(1), Q(0), Q(-1)};
  Isomorphism g2{Q(1, 3), Q(-2), Q(5), Q(1, 2)};
  CHECK(transform(transform(m, g1), g2) == transform(m, g1.then(g2)));

  CHECK(g.then(g.inverse()) == Isomorphism::identity());
  CHECK(g.inverse().then(g) == Isomorphism::identity());
}

TEST_CASE("transforms preserve j and scale c4, c6, delta") {
  RationalModel m = WeierstrassModel(0, 0, 1, -1, 0);
  Isomorphism g{Q(3, 5), Q(-2), Q(1, 2), Q(7)};
  auto moved = transform(m, g);
  auto inv = moved.invariants();
  CHECK(moved.j() == Rational(110592, 37));
  Rational u4 = g.u * g.u * g.u * g.u;
  CHECK(inv.c4 == Q(48) / u4);
  CHECK(inv.c6 == Q(-216) / (u4 * g.u * g.u));
  CHECK(inv.delta == Q(37) / (u4 * u4 * u4));
}

TEST_CASE("isomorphisms with u = 0 are rejected") {
  RationalModel m = WeierstrassModel(0, 0, 1, -1, 0);
  Isomorphism bad{Q(0), Q(0), Q(0), Q(0)};
  CHECK_THROWS_AS(transform(m, bad), std::invalid_argument);
  CHECK_THROWS_AS(bad.inverse(), std::invalid_argument);
}

TEST_CASE("integralize clears denominators minimally") {
  std::array<Rational, 5> a{Q(0), Q(0), Q(0), Q(-1, 16), Q(0)};
  auto [m, g] = integralize(RationalModel(a));
  CHECK(m == WeierstrassModel(0, 0, 0, -1, 0));
  CHECK(g.u == Q(1, 2));

  std::array<Rational, 5> b{Q(0), Q(0), Q(0), Q(1, 2), Q(0)};
  auto [m2, g2] = integralize(RationalModel(b));
  CHECK(m2 == WeierstrassModel(0, 0, 0, 8, 0));
  CHECK(g2.u == Q(1, 2));

  std::array<Rational, 5> c{Q(1, 2), Q(1, 3), Q(0), Q(0), Q(1, 5)};
  auto [m3, g3] = integralize(RationalModel(c));
  CHECK(g3.u == Q(1, 30));
  CHECK(m3.a1() == 15);
  CHECK(m3.a2() == 300);
  CHECK(m3.a6() == 145800000);

  // already integral: untouched
  auto [m4, g4] = integralize(RationalModel(WeierstrassModel(0, 0, 1, -1, 0)));
  CHECK(m4 == WeierstrassModel(0, 0, 1, -1, 0));
  CHECK(g4 == Isomorphism::identity());
}

TEST_CASE("integralize falls back to the lcm when factoring is hopeless") {
  // denominator is a 56-digit semiprime: per-prime analysis cannot finish
  Integer p("170141183460469231731687303715884105727");
  Integer q("618970019642690137449562111");
  Integer d = p * q;
  std::array<Rational, 5> a{Q(0), Q(0), Q(0), make_rational(1, d), Q(0)};
  FactorPolicy policy;
  policy.trial_bound = 1000;
  policy.rho_budget = 50;
  auto [m, g] = integralize(RationalModel(a), policy);
  CHECK(g.u == make_rational(1, d));
  CHECK(m.a4() == pow_int(d, 3));  // 1/d * d^4
}

TEST_CASE("to_integral rejects fractional models") {
  std::array<Rational, 5> a{Q(0), Q(0), Q(0), Q(-1, 16), Q(0)};
  CHECK_THROWS_AS(to_integral(RationalModel(a)), std::logic_error);
}

TEST_CASE("quadratic twist preserves j and scales delta") {
  WeierstrassModel m(0, 0, 1, -1, 0);
  auto t1 = quadratic_twist(m, 1);
  CHECK(t1 == WeierstrassModel(0, 0, 0, -1296, 11664));
  CHECK(t1.delta() == Integer(37) * pow_int(6, 12));
  CHECK(t1.j() == m.j());

  auto t37 = quadratic_twist(m, 37);
  CHECK(t37 == WeierstrassModel(0, 0, 0, Integer(-1296) * 1369,
                                Integer(11664) * 50653));
  CHECK(t37.j() == m.j());

  auto tneg = quadratic_twist(m, -2);
  CHECK(tneg.j() == m.j());

  CHECK_THROWS_AS(quadratic_twist(m, 0), std::invalid_argument);
}

}  // TEST_SUITE
