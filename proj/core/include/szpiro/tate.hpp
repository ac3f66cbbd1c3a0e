/* Local reduction data of an elliptic curve over Q at a prime: Kodaira type,
 * conductor exponent, component count, and the split/nonsplit distinction,
 * computed by the standard step-by-step reduction algorithm valid at every
 * prime including 2 and 3. */
#pragma once

#include <string>
#include <vector>

#include "szpiro/arith.hpp"
#include "szpiro/minimal.hpp"
#include "szpiro/weierstrass.hpp"

namespace szpiro {

enum class Reduction { good, split_multiplicative, nonsplit_multiplicative, additive };

const char* to_string(Reduction r);

struct KodairaType {
  enum class Family { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

  Family family = Family::I0;
  unsigned long n = 0;  // used by In (n >= 1) and Instar (n >= 1)

  /* Number of irreducible components of the special fiber, counted without
   * multiplicity; enters the conductor through f = v(delta) - m + 1. */
  unsigned long components() const;
  bool is_multiplicative() const { return family == Family::In; }
  bool is_additive() const;

  std::string str() const;  // "I0", "I5", "IV", "I2*", "III*", ...
  static KodairaType parse(const std::string& s);

  bool operator==(const KodairaType&) const = default;
};

struct LocalData {
  Integer p;
  KodairaType kodaira;
  unsigned long f = 0;         // conductor exponent at p
  unsigned long vp_delta = 0;  // valuation of the minimal discriminant
  unsigned long components = 1;
  Reduction reduction = Reduction::good;

  /* Hard consistency: the f = v(delta) - m + 1 relation, the family/f/m
   * correspondence, the conductor exponent caps (2 for p >= 5, 5 at p = 3,
   * 8 at p = 2), and reduction-kind agreement.  Throws std::logic_error. */
  void validate() const;
};

/* Local data at p of a model that is minimal at p.  The algorithm detects a
 * model that is not minimal at p and throws NonMinimalError.  `p` must be
 * prime. */
LocalData tate_local(const WeierstrassModel& minimal_at_p, const Integer& p);

/* Everything about one curve: global minimal model, factored minimal
 * discriminant, local data at each bad prime, and the conductor.
 * Throws FactorBudgetError if the discriminant cannot be fully factored. */
struct CurveAnalysis {
  WeierstrassModel minimal;
  Isomorphism to_minimal;
  Integer delta_min;
  Factorization delta_factors;  // of |delta_min|; always complete
  std::vector<LocalData> locals;  // ascending p, exactly the p | delta_min
  Integer conductor;
};

CurveAnalysis analyze_curve(const WeierstrassModel& m,
                            const FactorPolicy& policy = {});

}  // namespace szpiro
