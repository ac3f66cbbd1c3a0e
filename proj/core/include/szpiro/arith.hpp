/* Exact integer and rational arithmetic: valuations, factorization, primality.
 * Backed by GMP; all functions are pure and thread-safe. */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace szpiro {

using Integer = mpz_class;
using Rational = mpq_class;

/* A Weierstrass model with vanishing discriminant. */
class SingularModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/* Factorization gave up within the configured budget; the unfactored part is
 * carried along so callers can report it. */
class FactorBudgetError : public std::runtime_error {
 public:
  FactorBudgetError(const std::string& what, Integer cofactor)
      : std::runtime_error(what), cofactor(std::move(cofactor)) {}
  Integer cofactor;
};

/* Input model is not minimal at the prime under consideration. */
class NonMinimalError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FactorPolicy {
  std::uint64_t trial_bound = 1'000'000;  // trial-divide by primes up to here
  std::uint64_t rho_budget = 10'000'000;  // total Pollard-rho iterations
  unsigned mr_rounds = 40;                // random Miller-Rabin rounds
};

/* Factorization of |n|: prime factors in strictly increasing order plus an
 * unfactored cofactor (1 when complete). */
struct Factorization {
  std::vector<std::pair<Integer, unsigned>> factors;
  Integer cofactor{1};

  bool complete() const { return cofactor == 1; }
  Integer recompose() const;  // product of p^e times cofactor
  unsigned exponent_of(const Integer& p) const;  // 0 if p absent
};

/* v_p(n) for n != 0; p must be >= 2 (assumed prime). */
unsigned long vp(const Integer& p, const Integer& n);

/* v_p(q) for q != 0 (may be negative). */
long vp_rational(const Integer& p, const Rational& q);

/* Complete factorization of |n| when it fits the policy budget; otherwise a
 * partial one with composite cofactor recorded. n must be nonzero. */
Factorization factor(const Integer& n, const FactorPolicy& policy = {});

/* Miller-Rabin: deterministic witness set below ~3.3e24, plus policy.mr_rounds
 * pseudo-random bases (seeded from n, so the answer is reproducible). */
bool is_probable_prime(const Integer& n, const FactorPolicy& policy = {});

/* Primes up to bound, cached across calls. */
const std::vector<std::uint32_t>& small_primes(std::uint32_t bound);

/* |numerator| and denominator of a canonical rational. */
Integer num_abs(const Rational& q);
Integer den(const Rational& q);

/* num/den with canonicalization; den must be nonzero. */
Rational make_rational(const Integer& num, const Integer& den);

/* Residue in [0, m) for m > 0. */
Integer mod_floor(const Integer& a, const Integer& m);

/* Symmetric residue in (-m/2, m/2] for m > 0. */
Integer mods(const Integer& a, const Integer& m);

Integer pow_int(const Integer& base, unsigned long e);

/* Exact quotient a / b; throws std::logic_error if b does not divide a. */
Integer divexact(const Integer& a, const Integer& b);

}  // namespace szpiro
