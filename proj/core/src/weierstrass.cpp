#include "szpiro/weierstrass.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace szpiro {

namespace {

template <class T>
struct BInvariants {
  T b2, b4, b6, b8;
};

template <class T>
BInvariants<T> b_invariants(const std::array<T, 5>& a) {
  const T &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  BInvariants<T> b;
  b.b2 = a1 * a1 + 4 * a2;
  b.b4 = 2 * a4 + a1 * a3;
  b.b6 = a3 * a3 + 4 * a6;
  b.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return b;
}

template <class T>
T delta_from_b(const BInvariants<T>& b) {
  return -b.b2 * b.b2 * b.b8 - 8 * b.b4 * b.b4 * b.b4 - 27 * b.b6 * b.b6 +
         9 * b.b2 * b.b4 * b.b6;
}

/* Full invariant set with the classical identities rechecked; a violation
 * can only mean a coding error, so it is fatal. */
template <class Inv, class T>
Inv full_invariants(const std::array<T, 5>& a) {
  Inv inv;
  auto b = b_invariants(a);
  inv.b2 = b.b2;
  inv.b4 = b.b4;
  inv.b6 = b.b6;
  inv.b8 = b.b8;
  inv.c4 = b.b2 * b.b2 - 24 * b.b4;
  inv.c6 = -b.b2 * b.b2 * b.b2 + 36 * b.b2 * b.b4 - 216 * b.b6;
  inv.delta = delta_from_b(b);
  if (4 * inv.b8 != inv.b2 * inv.b6 - inv.b4 * inv.b4)
    throw std::logic_error("b-invariant identity violated");
  if (1728 * inv.delta != inv.c4 * inv.c4 * inv.c4 - inv.c6 * inv.c6)
    throw std::logic_error("c-invariant identity violated");
  return inv;
}

void require_nonsingular(const Rational& delta) {
  if (delta == 0)
    throw SingularModelError("vanishing discriminant: not an elliptic curve");
}

}  // namespace

Integer discriminant_of(const std::array<Integer, 5>& a) {
  return delta_from_b(b_invariants(a));
}

Rational discriminant_of(const std::array<Rational, 5>& a) {
  return delta_from_b(b_invariants(a));
}

WeierstrassModel::WeierstrassModel(Integer a1, Integer a2, Integer a3,
                                   Integer a4, Integer a6)
    : WeierstrassModel(std::array<Integer, 5>{
          std::move(a1), std::move(a2), std::move(a3), std::move(a4),
          std::move(a6)}) {}

WeierstrassModel::WeierstrassModel(const std::array<Integer, 5>& a) : a_(a) {
  require_nonsingular(Rational(discriminant_of(a_)));
}

StandardInvariants WeierstrassModel::invariants() const {
  auto inv = full_invariants<StandardInvariants>(a_);
  inv.j = make_rational(inv.c4 * inv.c4 * inv.c4, inv.delta);
  return inv;
}

Integer WeierstrassModel::delta() const { return discriminant_of(a_); }

Rational WeierstrassModel::j() const { return invariants().j; }

RationalModel::RationalModel(const std::array<Rational, 5>& a) : a_(a) {
  require_nonsingular(discriminant_of(a_));
}

RationalModel::RationalModel(const WeierstrassModel& m) {
  for (int i = 0; i < 5; ++i) a_[i] = Rational(m.coefficients()[i]);
}

RationalInvariants RationalModel::invariants() const {
  auto inv = full_invariants<RationalInvariants>(a_);
  inv.j = inv.c4 * inv.c4 * inv.c4 / inv.delta;
  inv.j.canonicalize();
  return inv;
}

Rational RationalModel::delta() const { return discriminant_of(a_); }

Rational RationalModel::j() const { return invariants().j; }

bool RationalModel::is_integral() const {
  for (const auto& c : a_)
    if (den(c) != 1) return false;
  return true;
}

namespace {
void require_unit(const Rational& u) {
  if (u == 0) throw std::invalid_argument("isomorphism with u = 0");
}
}  // namespace

Isomorphism Isomorphism::then(const Isomorphism& g) const {
  require_unit(u);
  require_unit(g.u);
  Isomorphism h;
  h.u = u * g.u;
  h.r = r + u * u * g.r;
  h.s = s + u * g.s;
  h.t = t + u * u * s * g.r + u * u * u * g.t;
  for (Rational* q : {&h.u, &h.r, &h.s, &h.t}) q->canonicalize();
  return h;
}

Isomorphism Isomorphism::inverse() const {
  require_unit(u);
  Isomorphism h;
  h.u = 1 / u;
  h.r = -r / (u * u);
  h.s = -s / u;
  h.t = (r * s - t) / (u * u * u);
  for (Rational* q : {&h.u, &h.r, &h.s, &h.t}) q->canonicalize();
  return h;
}

RationalModel transform(const RationalModel& m, const Isomorphism& g) {
  require_unit(g.u);
  const auto& a = m.coefficients();
  const Rational &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  const Rational &u = g.u, &r = g.r, &s = g.s, &t = g.t;
  const Rational u2 = u * u, u3 = u2 * u;
  std::array<Rational, 5> out;
  out[0] = (a1 + 2 * s) / u;
  out[1] = (a2 - s * a1 + 3 * r - s * s) / u2;
  out[2] = (a3 + r * a1 + 2 * t) / u3;
  out[3] = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) /
           (u2 * u2);
  out[4] = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) /
           (u3 * u3);
  for (auto& q : out) q.canonicalize();
  return RationalModel(out);
}

WeierstrassModel to_integral(const RationalModel& m) {
  std::array<Integer, 5> a;
  for (int i = 0; i < 5; ++i) {
    const Rational& q = m.coefficients()[i];
    if (den(q) != 1)
      throw std::logic_error("model expected to be integral is not");
    a[i] = Integer(q.get_num());
  }
  return WeierstrassModel(a);
}

WeierstrassModel transform_integral(const WeierstrassModel& m,
                                    const Isomorphism& g) {
  return to_integral(transform(RationalModel(m), g));
}

std::pair<WeierstrassModel, Isomorphism> integralize(const RationalModel& m,
                                                     const FactorPolicy& policy) {
  static constexpr int kWeight[5] = {1, 2, 3, 4, 6};
  Integer w = 1;
  try {
    /* Minimal scaling: for each prime p in a denominator, the exponent of p
     * in w must be at least ceil(v_p(den a_i) / weight_i) for every i. */
    std::map<Integer, unsigned long> need;
    for (int i = 0; i < 5; ++i) {
      Integer d = den(m.coefficients()[i]);
      if (d == 1) continue;
      auto f = factor(d, policy);
      if (!f.complete())
        throw FactorBudgetError("denominator resists factoring", f.cofactor);
      for (const auto& [p, e] : f.factors) {
        unsigned long v = (e + kWeight[i] - 1) / kWeight[i];
        auto [it, inserted] = need.emplace(p, v);
        if (!inserted && it->second < v) it->second = v;
      }
    }
    for (const auto& [p, v] : need) w *= pow_int(p, v);
  } catch (const FactorBudgetError&) {
    w = 1;
    for (int i = 0; i < 5; ++i) {
      Integer l;
      mpz_lcm(l.get_mpz_t(), w.get_mpz_t(), den(m.coefficients()[i]).get_mpz_t());
      w = l;
    }
  }
  Isomorphism g = Isomorphism::scaling(make_rational(1, w));
  return {to_integral(transform(m, g)), g};
}

WeierstrassModel quadratic_twist(const WeierstrassModel& m, const Integer& d) {
  if (d == 0) throw std::invalid_argument("quadratic twist by 0");
  auto inv = m.invariants();
  return WeierstrassModel(0, 0, 0, -27 * inv.c4 * d * d,
                          -54 * inv.c6 * d * d * d);
}

}  // namespace szpiro
