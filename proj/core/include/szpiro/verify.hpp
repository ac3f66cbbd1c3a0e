#pragma once

#include <szpiro/arith.hpp>
#include <szpiro/interval.hpp>
#include <szpiro/tate.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace szpiro {

/* Thrown when an inequality that holds for every elliptic curve over Q is
 * violated on a concrete curve: that can only mean a bug somewhere in the
 * pipeline, so it is surfaced loudly instead of being folded into a report. */
class BoundViolationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/* Everything downstream checks need to know about one curve, all referring to
 * the minimal model. */
struct CurveRecord {
  WeierstrassModel minimal;
  Integer delta_min_abs;           // |Delta| of the minimal model, >= 1
  Factorization delta_factored;    // complete factorization of delta_min_abs
  Integer conductor;               // N = prod p^f over the bad primes
  Factorization conductor_factored;
  std::vector<LocalData> locals;   // one entry per bad prime, ascending p
  Rational j;                      // j-invariant (signed, reduced)
  Integer j_num;                   // |numerator(j)|
  Integer j_den;                   // denominator(j), > 0
};

/* Build a CurveRecord for (the minimal model of) m.  Throws FactorBudgetError
 * if the minimal discriminant cannot be fully factored within the policy, and
 * SingularModelError is propagated from model construction. */
CurveRecord make_curve_record(const WeierstrassModel& m,
                              const FactorPolicy& policy = {});

/* A bad prime falls into exactly one class, determined by whether p divides
 * den(j) and, if so, by the reduction kind.  The numeric codes 1/2/3 are used
 * in all reports. */
enum class PrimeType {
  j_integral = 1,                // vp(j) >= 0 (including j = 0)
  multiplicative_nonintegral = 2,// vp(j) < 0, multiplicative reduction
  additive_nonintegral = 3,      // vp(j) < 0, additive reduction
};

constexpr int code(PrimeType t) { return static_cast<int>(t); }

/* vpj carries v_p(j), with nullopt meaning +infinity (j = 0).
 * Requires bad reduction (d.f >= 1); throws std::invalid_argument otherwise,
 * and std::logic_error if vpj contradicts the reduction data. */
PrimeType classify_prime(const LocalData& d, std::optional<long> vpj);

/* One valuation inequality per prime class, all in exact integer arithmetic:
 *   class 1:  vp(Delta) <= 5 vp(N)
 *   class 2:  vp(Delta)  = -vp(j)
 *   class 3:  vp(Delta) <= 3 vp(N) - vp(j) + delta_p,
 * where delta_p = 8 for p = 2 and 0 for odd p (wild-ramification headroom).
 * `rhs` records the right-hand side, `equality` whether it is attained. */
struct PrimeReport {
  Integer p;
  PrimeType type{PrimeType::j_integral};
  unsigned long vp_delta{0};
  unsigned long vp_N{0};
  std::optional<long> vp_j;      // nullopt <=> j = 0 (+infinity convention)
  unsigned delta_p{0};           // 8 iff p = 2 and class 3
  long rhs{0};
  bool satisfied{false};
  bool equality{false};
};

PrimeReport check_prime_bound(const Integer& p, PrimeType type,
                              unsigned long vp_delta, unsigned long vp_N,
                              std::optional<long> vpj);

/* |Delta| divides 16 * den(j) * N^5.  Evaluated twice: once by direct
 * big-integer divisibility and once prime-by-prime from the factorizations;
 * a mismatch between the two routes throws std::logic_error. */
bool divisibility_check(const CurveRecord& c);

/* h(j) <= 16 N log N with h the logarithmic height, decided by directed
 * rounding intervals with precision escalation. */
Verdict height_bound_check(const CurveRecord& c,
                           const PrecisionPolicy& policy = {});

/* Conditional discriminant bound with positive rational parameters A, B:
 *   applicable  <=>  den(j) <= A (log num(j))^B   (requires num(j) >= 2)
 *   holds       <=>  |Delta| <= A 16^{B+1} N^{B+5} (log N)^B
 * Curves with num(j) <= 1 are never applicable (the hypothesis involves
 * log num(j), which is then <= 0 while den(j) >= 1). */
struct TheoremCheck {
  Rational A{1};
  Rational B{1};
  Verdict applicable{Verdict::indeterminate};
  Verdict holds{Verdict::indeterminate};
};

TheoremCheck theorem_check(const CurveRecord& c, const Rational& A,
                           const Rational& B,
                           const PrecisionPolicy& policy = {});

/* Interval for log|Delta| / log N (exact 0 when |Delta| = 1). */
Interval szpiro_ratio(const CurveRecord& c, mpfr_prec_t prec = 128);

struct VerifyParams {
  FactorPolicy factor{};
  Rational A{1};
  Rational B{1};
  PrecisionPolicy precision{};
};

struct VerificationReport {
  CurveRecord curve;
  std::vector<PrimeReport> primes;   // aligned with curve.locals
  bool divisibility_ok{false};
  Verdict height_check{Verdict::indeterminate};
  TheoremCheck theorem;
  Interval ratio;
};

/* Full pipeline: minimise, factor, classify every bad prime, evaluate every
 * check.  Throws BoundViolationError if the height bound is violated or if
 * the conditional bound fails while its hypothesis holds (both are theorems),
 * and propagates FactorBudgetError from factorization. */
VerificationReport verify(const WeierstrassModel& m,
                          const VerifyParams& params = {});

}  // namespace szpiro
