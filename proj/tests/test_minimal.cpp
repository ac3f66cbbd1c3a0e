#include <stdexcept>

#include "doctest.h"
#include "szpiro/minimal.hpp"

using namespace szpiro;

TEST_SUITE("minimal") {

TEST_CASE("local admissibility of (c4, c6) pairs") {
  CHECK(kraus_conditions_ok(48, -216));
  CHECK(kraus_conditions_ok(496, 20008));
  CHECK(kraus_conditions_ok(192, 0));
  CHECK(kraus_conditions_ok(0, -864));
  CHECK(kraus_conditions_ok(5, 3));      // c6 = -1 (mod 4)
  CHECK(!kraus_conditions_ok(12, 0));    // fails at 2: c4 not 0 mod 16
  CHECK(!kraus_conditions_ok(0, -9));    // fails at 3: v3(c6) = 2
  CHECK(!kraus_conditions_ok(16, 16));   // c6 mod 32 = 16
}

TEST_CASE("standard model recovery from (c4, c6)") {
  CHECK(model_from_c4c6(48, -216) == WeierstrassModel(0, 0, 1, -1, 0));
  CHECK(model_from_c4c6(496, 20008) == WeierstrassModel(0, -1, 1, -10, -20));
  CHECK(model_from_c4c6(0, -864) == WeierstrassModel(0, 0, 0, 0, 1));
  CHECK(model_from_c4c6(192, 0) == WeierstrassModel(0, 0, 0, -4, 0));

  CHECK_THROWS_AS(model_from_c4c6(2, 2), std::invalid_argument);   // 1728 divides
  CHECK_THROWS_AS(model_from_c4c6(12, 0), std::invalid_argument);  // local test
  CHECK_THROWS_AS(model_from_c4c6(1, 1), SingularModelError);
}

TEST_CASE("already reduced models are fixed points") {
  for (const auto& m :
       {WeierstrassModel(0, 0, 1, -1, 0), WeierstrassModel(0, -1, 1, -10, -20),
        WeierstrassModel(0, 0, 0, -4, 0), WeierstrassModel(0, 0, 0, 0, 1)}) {
    auto r = minimal_model(m);
    CHECK(r.minimal == m);
    CHECK(r.to_minimal == Isomorphism::identity());
    CHECK(r.delta_min == m.delta());
    CHECK(is_minimal(m));
  }
}

TEST_CASE("a minimal model in nonstandard form is normalized with u = 1") {
  WeierstrassModel m(0, 0, 3, -1, -2);  // shift of y^2 + y = x^3 - x by t = 1
  auto r = minimal_model(m);
  CHECK(r.minimal == WeierstrassModel(0, 0, 1, -1, 0));
  CHECK((r.to_minimal == Isomorphism{1, 0, 0, -1}));
  CHECK(r.delta_min == 37);
  CHECK(is_minimal(m));  // same |delta|, only the shape differs
}

TEST_CASE("scaling blow-ups are undone") {
  WeierstrassModel blown(0, -4, 8, -160, -1280);  // u = 1/2 image of N=11 curve
  auto r = minimal_model(blown);
  CHECK(r.minimal == WeierstrassModel(0, -1, 1, -10, -20));
  CHECK(r.to_minimal.u == 2);
  CHECK(r.delta_min == -161051);
  CHECK(blown.delta() == Integer(-161051) * pow_int(2, 12));
  CHECK(!is_minimal(blown));

  WeierstrassModel blown6(0, -36, 216, -12960, -933120);  // u = 1/6 image
  auto r6 = minimal_model(blown6);
  CHECK(r6.minimal == WeierstrassModel(0, -1, 1, -10, -20));
  CHECK(r6.to_minimal.u == 6);
  CHECK(!is_minimal(blown6));
}

TEST_CASE("blow-ups with shifts are undone") {
  // image of the N=11 curve under (u, r, s, t) = (1/2, 1, 1, 1)
  WeierstrassModel moved(4, 4, 24, -192, -2048);
  CHECK(moved.delta() == -659664896);
  auto r = minimal_model(moved);
  CHECK(r.minimal == WeierstrassModel(0, -1, 1, -10, -20));
  CHECK(r.to_minimal.u == 2);
  CHECK(r.delta_min == -161051);
  CHECK(transform(RationalModel(moved), r.to_minimal) ==
        RationalModel(r.minimal));
}

TEST_CASE("reduction at 2 stops where the local conditions fail") {
  // v2(delta) = 12 but (c4, c6)/2-step fails, so the model is already minimal
  WeierstrassModel m(0, 0, 0, -4, 0);
  CHECK(m.delta() == 4096);
  CHECK(is_minimal(m));
}

TEST_CASE("reduction at 3 stops where the local conditions fail") {
  // v3(delta) = 13 but dividing once would leave v3(c6) = 2
  WeierstrassModel m(0, 0, 0, 0, 243);
  CHECK(vp(3, m.delta()) == 13);
  auto r = minimal_model(m);
  CHECK(r.minimal == m);
  CHECK(is_minimal(m));
}

TEST_CASE("quadratic twist by 37 minimizes to the expected model") {
  WeierstrassModel e(0, 0, 1, -1, 0);
  auto r = minimal_model(quadratic_twist(e, 37));
  CHECK(r.minimal == WeierstrassModel(0, 0, 1, -1369, 12663));
  CHECK(r.delta_min == Integer("94931877133"));  // 37^7
  CHECK(r.delta_min == pow_int(37, 7));
  CHECK(r.to_minimal.u == 6);
}

TEST_CASE("reduction at a large prime") {
  // u = 1/37 image of the N=37 curve: a_i scaled by 37^i
  Integer p = 37;
  WeierstrassModel blown(0, 0, pow_int(p, 3), -pow_int(p, 4), 0);
  auto r = minimal_model(blown);
  CHECK(r.minimal == WeierstrassModel(0, 0, 1, -1, 0));
  CHECK(r.to_minimal.u == 37);
  CHECK(r.delta_min == 37);
}

TEST_CASE("budget exhaustion on a hopeless discriminant throws") {
  Integer p("170141183460469231731687303715884105727");
  Integer q("618970019642690137449562111");
  WeierstrassModel m(1, 0, 0, 0, p * q);  // delta = -B(432B + 1), B = pq
  FactorPolicy policy;
  policy.trial_bound = 1000;
  policy.rho_budget = 50;
  CHECK_THROWS_AS(minimal_model(m, policy), FactorBudgetError);
}

TEST_CASE("small unfactored cofactors are provably harmless") {
  Integer s = Integer(1000003) * 1000033;
  WeierstrassModel m(1, 0, 0, 0, pow_int(2, 12) * s);
  FactorPolicy policy;
  policy.trial_bound = 1000;
  policy.rho_budget = 50;
  auto r = minimal_model(m, policy);  // must not throw
  CHECK(r.minimal == m);
  CHECK(r.to_minimal == Isomorphism::identity());
}

}  // TEST_SUITE
