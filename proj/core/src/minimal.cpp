#include "szpiro/minimal.hpp"

#include <algorithm>
#include <stdexcept>

namespace szpiro {

namespace {

bool local_ok_2(const Integer& c4, const Integer& c6) {
  if (mod_floor(c6, 4) == 3) return true;
  Integer r32 = mod_floor(c6, 32);
  return mod_floor(c4, 16) == 0 && (r32 == 0 || r32 == 8);
}

bool local_ok_3(const Integer& c6) { return c6 == 0 || vp(3, c6) != 2; }

bool local_ok(unsigned long p, const Integer& c4, const Integer& c6) {
  return p == 2 ? local_ok_2(c4, c6) : local_ok_3(c6);
}

/* Largest d with p^(4d) | c4, p^(6d) | c6, p^(12d) | delta (zero entries
 * impose no constraint; delta is never zero). */
unsigned long scaling_cap(const Integer& p, const Integer& c4,
                          const Integer& c6, const Integer& delta) {
  unsigned long cap = vp(p, delta) / 12;
  if (c4 != 0) cap = std::min(cap, vp(p, c4) / 4);
  if (c6 != 0) cap = std::min(cap, vp(p, c6) / 6);
  return cap;
}

}  // namespace

bool kraus_conditions_ok(const Integer& c4, const Integer& c6) {
  return local_ok_3(c6) && local_ok_2(c4, c6);
}

WeierstrassModel model_from_c4c6(const Integer& c4, const Integer& c6) {
  Integer num = c4 * c4 * c4 - c6 * c6;
  if (mod_floor(num, 1728) != 0)
    throw std::invalid_argument("c4^3 - c6^2 is not divisible by 1728");
  if (num == 0) throw SingularModelError("c4^3 = c6^2: vanishing discriminant");
  if (!kraus_conditions_ok(c4, c6))
    throw std::invalid_argument("(c4, c6) fails the local conditions at 2 or 3");

  Integer b2 = mods(-c6, 12);
  Integer b4 = divexact(b2 * b2 - c4, 24);
  Integer b6 = divexact(-b2 * b2 * b2 + 36 * b2 * b4 - c6, 216);
  Integer a1 = mod_floor(b2, 2);
  Integer a3 = mod_floor(b6, 2);
  Integer a2 = divexact(b2 - a1, 4);
  Integer a4 = divexact(b4 - a1 * a3, 2);
  Integer a6 = divexact(b6 - a3, 4);
  WeierstrassModel m(a1, a2, a3, a4, a6);
  auto inv = m.invariants();
  if (inv.c4 != c4 || inv.c6 != c6)
    throw std::logic_error("reduced model does not reproduce (c4, c6)");
  return m;
}

MinimalModelResult minimal_model(const WeierstrassModel& m,
                                 const FactorPolicy& policy) {
  auto inv = m.invariants();

  /* Candidate primes: always 2 and 3, plus known factors of delta.  A prime
   * can matter only when p^12 | delta, so an unfactored cofactor is harmless
   * as long as it is too small to hide a 12th power of anything beyond the
   * trial bound. */
  auto f = factor(inv.delta, policy);
  if (!f.complete() &&
      f.cofactor > pow_int(Integer(policy.trial_bound), 12))
    throw FactorBudgetError(
        "cannot certify minimality: discriminant cofactor may hide large "
        "12th powers",
        f.cofactor);

  std::vector<Integer> primes = {2, 3};
  for (const auto& [p, e] : f.factors)
    if (p > 3 && e >= 12) primes.push_back(p);

  Integer u = 1;
  for (const Integer& p : primes) {
    unsigned long d = scaling_cap(p, inv.c4, inv.c6, inv.delta);
    if (p <= 3) {
      auto ok = [&](unsigned long k) {
        return local_ok(p.get_ui(),
                        divexact(inv.c4, pow_int(p, 4 * k)),
                        divexact(inv.c6, pow_int(p, 6 * k)));
      };
      while (d > 0 && !ok(d)) --d;
      if (d == 0 && !ok(0))
        throw std::logic_error("integral model violates its own local conditions");
    }
    u *= pow_int(p, d);
  }

  Integer c4min = divexact(inv.c4, pow_int(u, 4));
  Integer c6min = divexact(inv.c6, pow_int(u, 6));
  WeierstrassModel minimal = model_from_c4c6(c4min, c6min);

  /* Recover (r, s, t) for the scaling u from the coefficient equations, then
   * confirm the transform reproduces the reduced model exactly. */
  Isomorphism g;
  g.u = Rational(u);
  g.s = Rational(u * minimal.a1() - m.a1()) / 2;
  g.r = (Rational(pow_int(u, 2) * minimal.a2() - m.a2()) + g.s * m.a1() +
         g.s * g.s) /
        3;
  g.t = (Rational(pow_int(u, 3) * minimal.a3() - m.a3()) - g.r * m.a1()) / 2;
  for (Rational* q : {&g.r, &g.s, &g.t}) q->canonicalize();
  if (transform(RationalModel(m), g) != RationalModel(minimal))
    throw std::logic_error("recovered isomorphism does not map to the minimal model");

  Integer delta_min = minimal.delta();
  return {std::move(minimal), std::move(g), std::move(delta_min)};
}

bool is_minimal(const WeierstrassModel& m, const FactorPolicy& policy) {
  return abs(m.delta()) == abs(minimal_model(m, policy).delta_min);
}

}  // namespace szpiro
