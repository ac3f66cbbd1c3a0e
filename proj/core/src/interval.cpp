#include "szpiro/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace szpiro {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
}

Interval::Interval() : Interval(static_cast<mpfr_prec_t>(64)) {
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) : Interval(other.prec_) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.prec_) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(Interval other) noexcept {
  std::swap(prec_, other.prec_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::exact_zero() { return Interval(); }

Interval Interval::from_integer(const Integer& n, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::log_of_integer(const Integer& n, mpfr_prec_t prec) {
  if (n < 1) throw std::domain_error("log_of_integer requires n >= 1");
  return from_integer(n, prec).log();
}

Interval Interval::operator+(const Interval& rhs) const {
  Interval r(std::max(prec_, rhs.prec_));
  mpfr_add(r.lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, rhs.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& rhs) const {
  Interval r(std::max(prec_, rhs.prec_));
  mpfr_sub(r.lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, rhs.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& rhs) const {
  const mpfr_prec_t prec = std::max(prec_, rhs.prec_);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::operator/(const Interval& rhs) const {
  if (mpfr_sgn(rhs.lo_) <= 0 && mpfr_sgn(rhs.hi_) >= 0)
    throw std::domain_error("interval division by an interval containing 0");
  const mpfr_prec_t prec = std::max(prec_, rhs.prec_);
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, prec);
  const mpfr_srcptr a[2] = {lo_, hi_};
  const mpfr_srcptr b[2] = {rhs.lo_, rhs.hi_};
  bool first = true;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      mpfr_div(t, a[i], b[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo_) < 0) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, a[i], b[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi_) > 0) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  }
  mpfr_clear(t);
  return r;
}

Interval Interval::log() const {
  if (mpfr_sgn(lo_) <= 0)
    throw std::domain_error("interval log requires a positive lower bound");
  Interval r(prec_);
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(prec_);
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(const Rational& e) const {
  if (e <= 0) throw std::domain_error("interval pow requires a positive exponent");
  if (mpfr_sgn(lo_) < 0)
    throw std::domain_error("interval pow requires a nonnegative base");
  /* x^e is increasing in x on [0, inf) for e > 0.  The exponent itself is
   * enclosed in [e_lo, e_hi]; x^t is increasing in t for x >= 1 and
   * decreasing for x < 1, which picks the endpoint to use. */
  mpfr_t e_lo, e_hi;
  mpfr_init2(e_lo, prec_);
  mpfr_init2(e_hi, prec_);
  mpfr_set_q(e_lo, e.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e_hi, e.get_mpq_t(), MPFR_RNDU);
  Interval r(prec_);
  mpfr_pow(r.lo_, lo_, mpfr_cmp_ui(lo_, 1) >= 0 ? e_lo : e_hi, MPFR_RNDD);
  mpfr_pow(r.hi_, hi_, mpfr_cmp_ui(hi_, 1) >= 0 ? e_hi : e_lo, MPFR_RNDU);
  mpfr_clear(e_lo);
  mpfr_clear(e_hi);
  return r;
}

Verdict Interval::le(const Interval& a, const Interval& b) {
  if (mpfr_cmp(a.hi_, b.lo_) <= 0) return Verdict::holds;
  if (mpfr_cmp(a.lo_, b.hi_) > 0) return Verdict::fails;
  return Verdict::indeterminate;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_cmp(lo_, other.lo_) <= 0 && mpfr_cmp(other.hi_, hi_) <= 0;
}

bool Interval::contains_integer(const Integer& n) const {
  return mpfr_cmp_z(lo_, n.get_mpz_t()) <= 0 &&
         mpfr_cmp_z(hi_, n.get_mpz_t()) >= 0;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }

double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, prec_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

std::string Interval::str(std::size_t digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "[%.*RDg, %.*RUg]", static_cast<int>(digits), lo_,
                static_cast<int>(digits), hi_);
  std::string out(s ? s : "[?, ?]");
  if (s) mpfr_free_str(s);
  return out;
}

DecideResult decide_le(
    const std::function<std::pair<Interval, Interval>(mpfr_prec_t)>& eval,
    const PrecisionPolicy& policy) {
  mpfr_prec_t prec = policy.start_bits;
  for (;;) {
    auto [lhs, rhs] = eval(prec);
    Verdict v = Interval::le(lhs, rhs);
    if (v != Verdict::indeterminate) return {v, prec};
    if (prec >= policy.max_bits) return {Verdict::indeterminate, prec};
    prec = std::min(policy.max_bits, prec * 2);
  }
}

Interval height(const Rational& q, mpfr_prec_t prec) {
  Integer m = std::max(num_abs(q), den(q));
  if (m <= 1) return Interval::exact_zero();
  return Interval::log_of_integer(m, prec);
}

}  // namespace szpiro
