/* Rigorous enclosures of real quantities: MPFR intervals with directed
 * rounding, three-valued comparisons, and automatic precision escalation. */
#pragma once

#include <mpfr.h>

#include <functional>
#include <string>
#include <utility>

#include "szpiro/arith.hpp"

namespace szpiro {

enum class Verdict { holds, fails, indeterminate };

const char* to_string(Verdict v);

/* A closed interval [lo, hi] guaranteed to contain the exact value.
 * Every operation rounds the lower endpoint down and the upper endpoint up,
 * so enclosures stay valid through arbitrary composition. */
class Interval {
 public:
  Interval();  // [0, 0]
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  static Interval exact_zero();
  static Interval from_integer(const Integer& n, mpfr_prec_t prec);
  static Interval from_rational(const Rational& q, mpfr_prec_t prec);
  /* log n for n >= 1. */
  static Interval log_of_integer(const Integer& n, mpfr_prec_t prec);

  Interval operator+(const Interval& rhs) const;
  Interval operator-(const Interval& rhs) const;
  Interval operator*(const Interval& rhs) const;
  /* rhs must not contain 0. */
  Interval operator/(const Interval& rhs) const;
  Interval log() const;  // requires lo > 0
  Interval exp() const;
  /* this^e for e > 0; requires lo >= 0. */
  Interval pow(const Rational& e) const;

  /* Three-valued a <= b. */
  static Verdict le(const Interval& a, const Interval& b);

  bool contains(const Interval& other) const;  // other subset of this
  bool contains_integer(const Integer& n) const;
  double lo_double() const;  // rounded down
  double hi_double() const;  // rounded up
  double width() const;
  mpfr_prec_t precision() const { return prec_; }
  std::string str(std::size_t digits = 17) const;

 private:
  explicit Interval(mpfr_prec_t prec);
  mpfr_prec_t prec_;
  mpfr_t lo_, hi_;
};

struct PrecisionPolicy {
  mpfr_prec_t start_bits = 64;
  mpfr_prec_t max_bits = 4096;
};

struct DecideResult {
  Verdict verdict;
  mpfr_prec_t bits_used;  // precision at which the verdict was reached
};

/* Evaluates lhs <= rhs, doubling the working precision until the comparison
 * resolves or the cap is hit. `eval` maps a precision to (lhs, rhs). */
DecideResult decide_le(
    const std::function<std::pair<Interval, Interval>(mpfr_prec_t)>& eval,
    const PrecisionPolicy& policy = {});

/* log max(|num q|, den q); exactly 0 for q = 0 and |q| = 1. */
Interval height(const Rational& q, mpfr_prec_t prec = 64);

}  // namespace szpiro
