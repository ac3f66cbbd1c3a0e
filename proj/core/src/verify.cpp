#include <szpiro/verify.hpp>

#include <sstream>
#include <utility>

namespace szpiro {

namespace {

unsigned long vp16(const Integer& p) { return p == 2 ? 4ul : 0ul; }

std::string describe(const CurveRecord& c) {
  std::ostringstream os;
  const auto& a = c.minimal.coefficients();
  os << "[" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << ","
     << a[4] << "], |Delta| = " << c.delta_min_abs
     << ", N = " << c.conductor;
  return os.str();
}

}  // namespace

CurveRecord make_curve_record(const WeierstrassModel& m,
                              const FactorPolicy& policy) {
  CurveAnalysis an = analyze_curve(m, policy);

  Factorization conductor_factored;
  for (const auto& ld : an.locals)
    conductor_factored.factors.emplace_back(ld.p, static_cast<unsigned>(ld.f));

  Rational j = an.minimal.j();
  CurveRecord rec{std::move(an.minimal),
                  abs(an.delta_min),
                  std::move(an.delta_factors),
                  an.conductor,
                  std::move(conductor_factored),
                  std::move(an.locals),
                  j,
                  num_abs(j),
                  den(j)};

  // Internal consistency; none of these can fail unless the pipeline is
  // broken, which is exactly when we want to hear about it.
  auto inconsistent = [&](const char* what) {
    throw std::logic_error(std::string("curve record inconsistency (") + what +
                           ") for " + describe(rec));
  };
  if (rec.delta_min_abs < 1) inconsistent("|Delta| < 1");
  if (rec.conductor < 11) inconsistent("conductor below 11");
  if (!rec.delta_factored.complete()) inconsistent("incomplete factorization");
  if (rec.delta_factored.recompose() != rec.delta_min_abs)
    inconsistent("Delta refactorization");
  if (rec.conductor_factored.recompose() != rec.conductor)
    inconsistent("N refactorization");
  if (rec.delta_factored.factors.size() != rec.locals.size())
    inconsistent("bad-prime support mismatch");
  for (size_t i = 0; i < rec.locals.size(); ++i) {
    const auto& ld = rec.locals[i];
    if (ld.p != rec.delta_factored.factors[i].first)
      inconsistent("bad-prime support mismatch");
    if (ld.f < 1) inconsistent("bad prime with conductor exponent 0");
    // den(j) and the local valuation of j must tell the same story.
    unsigned long den_val = vp(ld.p, rec.j_den);
    if (rec.j == 0) {
      if (den_val != 0) inconsistent("denominator of j = 0");
    } else {
      long vpj = vp_rational(ld.p, rec.j);
      unsigned long expect = vpj < 0 ? static_cast<unsigned long>(-vpj) : 0ul;
      if (den_val != expect) inconsistent("v_p(den j) vs v_p(j)");
    }
  }
  return rec;
}

PrimeType classify_prime(const LocalData& d, std::optional<long> vpj) {
  if (d.f < 1)
    throw std::invalid_argument(
        "classify_prime: prime of good reduction has no class");
  const bool mult = d.kodaira.is_multiplicative();
  if (!vpj.has_value() || *vpj >= 0) {
    // Multiplicative reduction forces vp(j) = -n < 0.
    if (mult)
      throw std::logic_error(
          "classify_prime: multiplicative reduction with vp(j) >= 0");
    return PrimeType::j_integral;
  }
  return mult ? PrimeType::multiplicative_nonintegral
              : PrimeType::additive_nonintegral;
}

PrimeReport check_prime_bound(const Integer& p, PrimeType type,
                              unsigned long vp_delta, unsigned long vp_N,
                              std::optional<long> vpj) {
  PrimeReport r;
  r.p = p;
  r.type = type;
  r.vp_delta = vp_delta;
  r.vp_N = vp_N;
  r.vp_j = vpj;
  switch (type) {
    case PrimeType::j_integral:
      r.rhs = 5l * static_cast<long>(vp_N);
      break;
    case PrimeType::multiplicative_nonintegral:
      if (!vpj.has_value() || *vpj >= 0)
        throw std::logic_error(
            "check_prime_bound: class 2 requires vp(j) < 0");
      r.rhs = -*vpj;
      break;
    case PrimeType::additive_nonintegral:
      if (!vpj.has_value() || *vpj >= 0)
        throw std::logic_error(
            "check_prime_bound: class 3 requires vp(j) < 0");
      r.delta_p = (p == 2) ? 8u : 0u;
      r.rhs = 3l * static_cast<long>(vp_N) - *vpj +
              static_cast<long>(r.delta_p);
      break;
  }
  const long vd = static_cast<long>(vp_delta);
  if (type == PrimeType::multiplicative_nonintegral) {
    r.satisfied = (vd == r.rhs);
    r.equality = r.satisfied;
  } else {
    r.satisfied = (vd <= r.rhs);
    r.equality = (vd == r.rhs);
  }
  return r;
}

bool divisibility_check(const CurveRecord& c) {
  const Integer target = 16 * c.j_den * pow_int(c.conductor, 5);
  const bool direct =
      mpz_divisible_p(target.get_mpz_t(), c.delta_min_abs.get_mpz_t()) != 0;

  bool per_prime = true;
  for (const auto& [p, e] : c.delta_factored.factors) {
    unsigned long cap = vp16(p) + vp(p, c.j_den) + 5ul * vp(p, c.conductor);
    if (e > cap) per_prime = false;
  }
  if (direct != per_prime)
    throw std::logic_error("divisibility routes disagree for " + describe(c));
  return direct;
}

Verdict height_bound_check(const CurveRecord& c,
                           const PrecisionPolicy& policy) {
  const Integer sixteen_n = 16 * c.conductor;
  auto eval = [&](mpfr_prec_t prec) {
    Interval lhs = height(c.j, prec);
    Interval rhs = Interval::from_integer(sixteen_n, prec) *
                   Interval::log_of_integer(c.conductor, prec);
    return std::make_pair(std::move(lhs), std::move(rhs));
  };
  return decide_le(eval, policy).verdict;
}

TheoremCheck theorem_check(const CurveRecord& c, const Rational& A,
                           const Rational& B, const PrecisionPolicy& policy) {
  if (A <= 0 || B <= 0)
    throw std::invalid_argument("theorem_check: A and B must be positive");
  TheoremCheck out;
  out.A = A;
  out.B = B;

  if (c.j_num <= 1) {
    // log num(j) <= 0 while den(j) >= 1: the hypothesis cannot hold.
    out.applicable = Verdict::fails;
  } else {
    auto hyp = [&](mpfr_prec_t prec) {
      Interval lhs = Interval::from_integer(c.j_den, prec);
      Interval rhs = Interval::from_rational(A, prec) *
                     Interval::log_of_integer(c.j_num, prec).pow(B);
      return std::make_pair(std::move(lhs), std::move(rhs));
    };
    out.applicable = decide_le(hyp, policy).verdict;
  }

  auto bound = [&](mpfr_prec_t prec) {
    Interval lhs = Interval::from_integer(c.delta_min_abs, prec);
    Interval rhs = Interval::from_rational(A, prec) *
                   Interval::from_integer(16, prec).pow(B + 1) *
                   Interval::from_integer(c.conductor, prec).pow(B + 5) *
                   Interval::log_of_integer(c.conductor, prec).pow(B);
    return std::make_pair(std::move(lhs), std::move(rhs));
  };
  out.holds = decide_le(bound, policy).verdict;
  return out;
}

Interval szpiro_ratio(const CurveRecord& c, mpfr_prec_t prec) {
  if (c.delta_min_abs == 1) return Interval::exact_zero();
  return Interval::log_of_integer(c.delta_min_abs, prec) /
         Interval::log_of_integer(c.conductor, prec);
}

VerificationReport verify(const WeierstrassModel& m,
                          const VerifyParams& params) {
  CurveRecord rec = make_curve_record(m, params.factor);

  std::vector<PrimeReport> primes;
  primes.reserve(rec.locals.size());
  for (const auto& ld : rec.locals) {
    std::optional<long> vpj;
    if (rec.j != 0) vpj = vp_rational(ld.p, rec.j);
    PrimeType t = classify_prime(ld, vpj);
    primes.push_back(check_prime_bound(ld.p, t, ld.vp_delta, ld.f, vpj));
  }

  bool div_ok = divisibility_check(rec);

  Verdict hcheck = height_bound_check(rec, params.precision);
  if (hcheck == Verdict::fails)
    throw BoundViolationError("height bound h(j) <= 16 N log N fails for " +
                              describe(rec));

  TheoremCheck thm = theorem_check(rec, params.A, params.B, params.precision);
  if (thm.applicable == Verdict::holds && thm.holds == Verdict::fails)
    throw BoundViolationError(
        "conditional discriminant bound fails while applicable for " +
        describe(rec));

  Interval ratio = szpiro_ratio(rec);

  return VerificationReport{std::move(rec),    std::move(primes), div_ok,
                            hcheck,            thm,               std::move(ratio)};
}

}  // namespace szpiro
