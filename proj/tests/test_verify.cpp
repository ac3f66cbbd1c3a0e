// Tests for the per-prime valuation bounds, the divisibility and height
// corollaries, the conditional discriminant bound, and the full pipeline.
// Expected values are frozen from hand evaluation; the whole reference-curve
// fixture then serves as a battery on which every check must pass.
#include "doctest.h"

#include <szpiro/verify.hpp>

#include <fstream>
#include <sstream>
#include <vector>

using namespace szpiro;

namespace {

LocalData make_local(long p, const char* kodaira, unsigned long f,
                     unsigned long vd, Reduction red) {
    LocalData d;
    d.p = p;
    d.kodaira = KodairaType::parse(kodaira);
    d.f = f;
    d.vp_delta = vd;
    d.components = d.kodaira.components();
    d.reduction = red;
    return d;
}

std::vector<std::array<Integer, 5>> fixture_models() {
    const std::string path =
        std::string(SZPIRO_TEST_DATA_DIR) + "/reference_curves.tsv";
    std::ifstream in(path);
    REQUIRE(in.good());
    std::vector<std::array<Integer, 5>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream is(line);
        std::string label, coeffs;
        REQUIRE(bool(std::getline(is, label, '\t')));
        REQUIRE(bool(std::getline(is, coeffs, '\t')));
        std::array<Integer, 5> a;
        std::istringstream cs(coeffs);
        std::string item;
        for (int i = 0; i < 5; ++i) {
            REQUIRE(bool(std::getline(cs, item, ',')));
            a[size_t(i)] = Integer(item);
        }
        out.push_back(a);
    }
    REQUIRE(out.size() >= 25);
    return out;
}

} // namespace

TEST_SUITE_BEGIN("verify");

TEST_CASE("prime classification from vp(j) and reduction kind") {
    using PT = PrimeType;
    // Multiplicative prime with j-denominator: class 2.
    auto i1 = make_local(37, "I1", 1, 1, Reduction::nonsplit_multiplicative);
    CHECK(classify_prime(i1, -1L) == PT::multiplicative_nonintegral);
    auto i5 = make_local(11, "I5", 1, 5, Reduction::split_multiplicative);
    CHECK(classify_prime(i5, -5L) == PT::multiplicative_nonintegral);
    // Additive prime with integral j (e.g. j = 0): class 1.
    auto iv = make_local(3, "IV", 2, 3, Reduction::additive);
    CHECK(classify_prime(iv, std::nullopt) == PT::j_integral);
    CHECK(classify_prime(iv, 4L) == PT::j_integral);
    CHECK(classify_prime(iv, 0L) == PT::j_integral);
    // Additive prime with j-denominator: class 3.
    auto i1star = make_local(37, "I1*", 2, 7, Reduction::additive);
    CHECK(classify_prime(i1star, -1L) == PT::additive_nonintegral);

    CHECK(code(PT::j_integral) == 1);
    CHECK(code(PT::multiplicative_nonintegral) == 2);
    CHECK(code(PT::additive_nonintegral) == 3);

    // Good reduction has no class.
    LocalData good;
    good.p = 5;
    good.f = 0;
    CHECK_THROWS_AS(classify_prime(good, 0L), std::invalid_argument);
    // Multiplicative reduction forces vp(j) < 0.
    CHECK_THROWS_AS(classify_prime(i1, 0L), std::logic_error);
    CHECK_THROWS_AS(classify_prime(i1, std::nullopt), std::logic_error);
}

TEST_CASE("valuation bounds per class, frozen cases") {
    using PT = PrimeType;
    SUBCASE("class 2 is an equality") {
        auto r = check_prime_bound(37, PT::multiplicative_nonintegral, 1, 1, -1L);
        CHECK(r.rhs == 1);
        CHECK(r.satisfied);
        CHECK(r.equality);
        CHECK(r.delta_p == 0);
        // A mismatch is reported, not masked.
        auto bad = check_prime_bound(11, PT::multiplicative_nonintegral, 4, 1, -5L);
        CHECK(bad.rhs == 5);
        CHECK_FALSE(bad.satisfied);
        CHECK_FALSE(bad.equality);
    }
    SUBCASE("class 3 at an odd prime: rhs = 3 vp(N) - vp(j)") {
        auto r = check_prime_bound(37, PT::additive_nonintegral, 7, 2, -1L);
        CHECK(r.delta_p == 0);
        CHECK(r.rhs == 7); // 3*2 + 1: attained by the twisted curve below
        CHECK(r.satisfied);
        CHECK(r.equality);
    }
    SUBCASE("class 3 at p = 2 gains the wild-ramification allowance 8") {
        auto r = check_prime_bound(2, PT::additive_nonintegral, 13, 4, -1L);
        CHECK(r.delta_p == 8);
        CHECK(r.rhs == 21); // 3*4 + 1 + 8
        CHECK(r.satisfied);
        CHECK_FALSE(r.equality);
    }
    SUBCASE("class 1: vp(Delta) <= 5 vp(N)") {
        auto r = check_prime_bound(3, PT::j_integral, 3, 1, std::nullopt);
        CHECK(r.rhs == 5);
        CHECK(r.satisfied);
        CHECK_FALSE(r.equality);
        auto tight = check_prime_bound(5, PT::j_integral, 10, 2, std::nullopt);
        CHECK(tight.rhs == 10);
        CHECK(tight.satisfied);
        CHECK(tight.equality);
        auto over = check_prime_bound(2, PT::j_integral, 11, 2, 1L);
        CHECK(over.rhs == 10);
        CHECK_FALSE(over.satisfied);
    }
    SUBCASE("classes 2/3 refuse a nonnegative vp(j)") {
        CHECK_THROWS_AS(
            check_prime_bound(7, PT::multiplicative_nonintegral, 1, 1, std::nullopt),
            std::logic_error);
        CHECK_THROWS_AS(check_prime_bound(7, PT::additive_nonintegral, 6, 2, 2L),
                        std::logic_error);
    }
}

TEST_CASE("curve record assembly, frozen invariants") {
    SUBCASE("conductor 37 curve") {
        CurveRecord c = make_curve_record(WeierstrassModel(0, 0, 1, -1, 0));
        CHECK(c.delta_min_abs == 37);
        CHECK(c.conductor == 37);
        CHECK(c.j == Rational(110592, 37));
        CHECK(c.j_num == 110592);
        CHECK(c.j_den == 37);
        REQUIRE(c.delta_factored.factors.size() == 1);
        CHECK(c.delta_factored.factors[0] == std::make_pair(Integer(37), 1u));
        REQUIRE(c.conductor_factored.factors.size() == 1);
        CHECK(c.conductor_factored.factors[0] == std::make_pair(Integer(37), 1u));
        REQUIRE(c.locals.size() == 1);
        CHECK(c.locals[0].kodaira == KodairaType{KodairaType::Family::In, 1});
    }
    SUBCASE("conductor 11 curve: negative j is reported by absolute numerator") {
        CurveRecord c = make_curve_record(WeierstrassModel(0, -1, 1, -10, -20));
        CHECK(c.delta_min_abs == 161051);
        CHECK(c.conductor == 11);
        CHECK(c.j == Rational(-122023936, 161051));
        CHECK(c.j_num == 122023936);
        CHECK(c.j_den == pow_int(11, 5));
    }
    SUBCASE("j = 0 conventions") {
        CurveRecord c = make_curve_record(WeierstrassModel(0, 0, 0, 0, 1));
        CHECK(c.delta_min_abs == 432);
        CHECK(c.conductor == 36);
        CHECK(c.j == 0);
        CHECK(c.j_num == 0);
        CHECK(c.j_den == 1);
    }
    SUBCASE("non-minimal input is minimised first") {
        CurveRecord c = make_curve_record(WeierstrassModel(0, 0, 8, -16, 0));
        CHECK(c.minimal.coefficients() ==
              std::array<Integer, 5>{0, 0, 1, -1, 0});
        CHECK(c.delta_min_abs == 37);
        CHECK(c.conductor == 37);
    }
    SUBCASE("factorization budget failures propagate") {
        Integer B = Integer("1000003") * Integer("1000033");
        FactorPolicy tiny;
        tiny.trial_bound = 1000;
        tiny.rho_budget = 50;
        CHECK_THROWS_AS(make_curve_record(WeierstrassModel(1, 0, 0, 0, B), tiny),
                        FactorBudgetError);
    }
}

TEST_CASE("discriminant divides 16 den(j) N^5, two routes") {
    for (auto curve : {WeierstrassModel(0, 0, 1, -1, 0),
                       WeierstrassModel(0, -1, 1, -10, -20),
                       WeierstrassModel(0, 0, 0, 0, 1),
                       WeierstrassModel(0, 0, 1, -1369, 12663)}) {
        CurveRecord c = make_curve_record(curve);
        CAPTURE(c.conductor.get_str());
        CHECK(divisibility_check(c));
    }
}

TEST_CASE("height of j against 16 N log N") {
    PrecisionPolicy strict{64, 256}; // must resolve within 256 bits
    for (auto curve : {WeierstrassModel(0, 0, 1, -1, 0),
                       WeierstrassModel(0, -1, 1, -10, -20),
                       WeierstrassModel(0, 0, 0, 0, 1),
                       WeierstrassModel(0, -1, 0, -8, 112)}) {
        CurveRecord c = make_curve_record(curve);
        CAPTURE(c.conductor.get_str());
        CHECK(height_bound_check(c, strict) == Verdict::holds);
    }
}

TEST_CASE("conditional bound: applicability and conclusion, frozen cases") {
    CurveRecord c37 = make_curve_record(WeierstrassModel(0, 0, 1, -1, 0));
    // den(j) = 37, log num(j) = log 110592 ~ 11.61.
    auto t = theorem_check(c37, 1, 1);
    CHECK(t.applicable == Verdict::fails); // 37 > 11.61
    CHECK(t.holds == Verdict::holds);
    t = theorem_check(c37, 10, 1);
    CHECK(t.applicable == Verdict::holds); // 37 <= 116.1
    CHECK(t.holds == Verdict::holds);
    t = theorem_check(c37, 1, 2);
    CHECK(t.applicable == Verdict::holds); // 37 <= 11.61^2 ~ 134.9
    CHECK(t.holds == Verdict::holds);
    // Monotonicity in A at fixed B.
    t = theorem_check(c37, 1000000, 1);
    CHECK(t.applicable == Verdict::holds);

    CurveRecord c11 = make_curve_record(WeierstrassModel(0, -1, 1, -10, -20));
    // den(j) = 161051, log num(j) = log 122023936 ~ 18.62.
    t = theorem_check(c11, 1, 1);
    CHECK(t.applicable == Verdict::fails);
    t = theorem_check(c11, 1000000, 1);
    CHECK(t.applicable == Verdict::holds); // 161051 <= 1.86e7
    CHECK(t.holds == Verdict::holds);
    t = theorem_check(c11, 1000000, 5);
    CHECK(t.applicable == Verdict::holds);
    CHECK(t.holds == Verdict::holds);

    CurveRecord c0 = make_curve_record(WeierstrassModel(0, 0, 0, 0, 1));
    t = theorem_check(c0, 1000000, 5);
    CHECK(t.applicable == Verdict::fails); // j = 0: log num(j) undefined
    CHECK(t.holds == Verdict::holds);

    CHECK_THROWS_AS(theorem_check(c37, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(theorem_check(c37, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(theorem_check(c37, -3, 2), std::invalid_argument);
    // Rational parameters are accepted.
    t = theorem_check(c37, Rational(7, 2), Rational(3, 2));
    CHECK(t.applicable == Verdict::holds); // 37 <= 3.5 * 11.61^1.5 ~ 138.5
    CHECK(t.holds == Verdict::holds);
}

TEST_CASE("discriminant-conductor log ratio") {
    CurveRecord c37 = make_curve_record(WeierstrassModel(0, 0, 1, -1, 0));
    Interval r = szpiro_ratio(c37);
    CHECK(r.contains_integer(1)); // log 37 / log 37
    CHECK(r.hi_double() - r.lo_double() < 1e-12);

    CurveRecord c11 = make_curve_record(WeierstrassModel(0, -1, 1, -10, -20));
    r = szpiro_ratio(c11);
    CHECK(r.contains_integer(5)); // log 11^5 / log 11
    CHECK(r.hi_double() - r.lo_double() < 1e-12);
}

TEST_CASE("full pipeline on the twisted curve: the sharp additive case") {
    VerifyParams params;
    VerificationReport rep = verify(WeierstrassModel(0, 0, 1, -1369, 12663), params);
    CHECK(rep.curve.delta_min_abs == pow_int(37, 7));
    CHECK(rep.curve.conductor == 1369);
    REQUIRE(rep.primes.size() == 1);
    const PrimeReport& pr = rep.primes[0];
    CHECK(pr.p == 37);
    CHECK(pr.type == PrimeType::additive_nonintegral);
    CHECK(pr.vp_delta == 7);
    CHECK(pr.vp_N == 2);
    REQUIRE(pr.vp_j.has_value());
    CHECK(*pr.vp_j == -1);
    CHECK(pr.delta_p == 0);
    CHECK(pr.rhs == 7);
    CHECK(pr.satisfied);
    CHECK(pr.equality); // the bound is attained
    CHECK(rep.divisibility_ok);
    CHECK(rep.height_check == Verdict::holds);
    CHECK(rep.theorem.applicable == Verdict::fails); // den(j) = 37 > log num
    CHECK(rep.theorem.holds == Verdict::holds);
}

TEST_CASE("full pipeline: additive class at p = 2 with the allowance") {
    VerificationReport rep = verify(WeierstrassModel(0, -1, 0, -8, 112), {});
    CHECK(rep.curve.conductor == 400);
    CHECK(rep.curve.j == Rational(-25, 2));
    CHECK(rep.curve.j_den == 2);
    REQUIRE(rep.primes.size() == 2);
    CHECK(rep.primes[0].p == 2);
    CHECK(rep.primes[0].type == PrimeType::additive_nonintegral);
    CHECK(rep.primes[0].delta_p == 8);
    CHECK(rep.primes[0].vp_delta == 13);
    CHECK(rep.primes[0].rhs == 21);
    CHECK(rep.primes[0].satisfied);
    CHECK(rep.primes[1].p == 5);
    CHECK(rep.primes[1].type == PrimeType::j_integral);
    REQUIRE(rep.primes[1].vp_j.has_value());
    CHECK(*rep.primes[1].vp_j == 2);
    CHECK(rep.primes[1].rhs == 10);
    CHECK(rep.primes[1].satisfied);
    CHECK(rep.divisibility_ok);
}

TEST_CASE("battery: every reference curve passes every check") {
    VerifyParams params; // A = B = 1
    size_t class_counts[4] = {0, 0, 0, 0};
    for (const auto& a : fixture_models()) {
        WeierstrassModel m(a);
        std::string tag = "[" + a[0].get_str() + "," + a[1].get_str() + "," +
                          a[2].get_str() + "," + a[3].get_str() + "," +
                          a[4].get_str() + "]";
        CAPTURE(tag);
        VerificationReport rep = verify(m, params);
        REQUIRE(rep.primes.size() == rep.curve.locals.size());
        for (size_t i = 0; i < rep.primes.size(); ++i) {
            const auto& pr = rep.primes[i];
            CHECK(pr.p == rep.curve.locals[i].p);
            CHECK(pr.satisfied); // the bounds are theorems
            if (pr.type == PrimeType::multiplicative_nonintegral)
                CHECK(pr.equality);
            if (pr.type != PrimeType::additive_nonintegral)
                CHECK(pr.delta_p == 0);
            class_counts[size_t(code(pr.type))]++;
        }
        CHECK(rep.divisibility_ok);
        CHECK(rep.height_check == Verdict::holds);
        if (rep.theorem.applicable == Verdict::holds)
            CHECK(rep.theorem.holds == Verdict::holds);
        CHECK(rep.ratio.lo_double() > 0.0);
    }
    // The corpus genuinely exercises all three classes.
    CHECK(class_counts[1] >= 10);
    CHECK(class_counts[2] >= 15);
    CHECK(class_counts[3] >= 2);
}

TEST_SUITE_END();
