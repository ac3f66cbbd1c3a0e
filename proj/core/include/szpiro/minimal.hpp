/* Global minimal models over Q: scaling exponents from valuations of
 * (c4, c6, delta), local admissibility tests at 2 and 3, and recovery of the
 * standard reduced model from its (c4, c6) pair. */
#pragma once

#include "szpiro/arith.hpp"
#include "szpiro/weierstrass.hpp"

namespace szpiro {

/* True when an integral model with invariants (c4, c6) can exist:
 * at 3, v3(c6) != 2; at 2, either c6 = -1 (mod 4), or c4 = 0 (mod 16) and
 * c6 mod 32 is 0 or 8. */
bool kraus_conditions_ok(const Integer& c4, const Integer& c6);

/* The standard reduced integral model with the given invariants.  Requires
 * 1728 | c4^3 - c6^2, nonzero discriminant, and kraus_conditions_ok. */
WeierstrassModel model_from_c4c6(const Integer& c4, const Integer& c6);

struct MinimalModelResult {
  WeierstrassModel minimal;   // the standard reduced global minimal model
  Isomorphism to_minimal;     // transform(input, to_minimal) == minimal
  Integer delta_min;          // discriminant of `minimal`
};

/* Global minimal model of an integral curve.  Throws FactorBudgetError when
 * the discriminant cannot be factored well enough to rule out reducible
 * primes under the given policy. */
MinimalModelResult minimal_model(const WeierstrassModel& m,
                                 const FactorPolicy& policy = {});

/* |delta| already as small as an integral model of this curve allows. */
bool is_minimal(const WeierstrassModel& m, const FactorPolicy& policy = {});

}  // namespace szpiro
