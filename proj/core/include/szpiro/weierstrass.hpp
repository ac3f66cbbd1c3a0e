/* Weierstrass models of elliptic curves over Q, their standard invariants,
 * and the (u, r, s, t) changes of variables connecting them. */
#pragma once

#include <array>

#include "szpiro/arith.hpp"

namespace szpiro {

struct StandardInvariants {
  Integer b2, b4, b6, b8;
  Integer c4, c6;
  Integer delta;
  Rational j;  // c4^3 / delta, in lowest terms
};

struct RationalInvariants {
  Rational b2, b4, b6, b8;
  Rational c4, c6;
  Rational delta;
  Rational j;
};

/* Discriminant of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 without any
 * nonsingularity requirement (used to diagnose singular input). */
Integer discriminant_of(const std::array<Integer, 5>& a);
Rational discriminant_of(const std::array<Rational, 5>& a);

/* An integral model with nonzero discriminant; construction throws
 * SingularModelError otherwise.  Coefficient order is a1, a2, a3, a4, a6. */
class WeierstrassModel {
 public:
  WeierstrassModel(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);
  explicit WeierstrassModel(const std::array<Integer, 5>& a);

  const Integer& a1() const { return a_[0]; }
  const Integer& a2() const { return a_[1]; }
  const Integer& a3() const { return a_[2]; }
  const Integer& a4() const { return a_[3]; }
  const Integer& a6() const { return a_[4]; }
  const std::array<Integer, 5>& coefficients() const { return a_; }

  StandardInvariants invariants() const;
  Integer delta() const;
  Rational j() const;

  bool operator==(const WeierstrassModel&) const = default;

 private:
  std::array<Integer, 5> a_;
};

/* Same, with rational coefficients (arises from changes of variables). */
class RationalModel {
 public:
  explicit RationalModel(const std::array<Rational, 5>& a);
  RationalModel(const WeierstrassModel& m);  // intentionally implicit

  const std::array<Rational, 5>& coefficients() const { return a_; }
  RationalInvariants invariants() const;
  Rational delta() const;
  Rational j() const;
  bool is_integral() const;

  bool operator==(const RationalModel&) const = default;

 private:
  std::array<Rational, 5> a_;
};

/* Change of variables x = u^2 x' + r, y = u^3 y' + u^2 s x' + t with u != 0,
 * mapping a model to an isomorphic one with delta' = delta / u^12. */
struct Isomorphism {
  Rational u{1}, r{0}, s{0}, t{0};

  static Isomorphism identity() { return {}; }
  static Isomorphism scaling(const Rational& u) { return {u, 0, 0, 0}; }

  /* The map "apply *this, then apply g". */
  Isomorphism then(const Isomorphism& g) const;
  Isomorphism inverse() const;

  bool operator==(const Isomorphism&) const = default;
};

RationalModel transform(const RationalModel& m, const Isomorphism& g);

/* Conversion that insists every coefficient is an integer. */
WeierstrassModel to_integral(const RationalModel& m);
WeierstrassModel transform_integral(const WeierstrassModel& m,
                                    const Isomorphism& g);

/* Clears denominators with a scaling isomorphism whose u = 1/w has w minimal
 * (w's exponent at each prime is as small as the coefficient denominators
 * allow).  If a denominator resists factoring under the policy, falls back to
 * the lcm of the denominators, which is always sufficient.
 * Returns the integral model and the isomorphism that produced it. */
std::pair<WeierstrassModel, Isomorphism> integralize(
    const RationalModel& m, const FactorPolicy& policy = {});

/* The quadratic twist by d != 0: y^2 = x^3 - 27 c4 d^2 x - 54 c6 d^3. */
WeierstrassModel quadratic_twist(const WeierstrassModel& m, const Integer& d);

}  // namespace szpiro
