#include "szpiro/tate.hpp"

#include <climits>
#include <stdexcept>
#include <utility>

namespace szpiro {

const char* to_string(Reduction r) {
  switch (r) {
    case Reduction::good: return "good";
    case Reduction::split_multiplicative: return "split multiplicative";
    case Reduction::nonsplit_multiplicative: return "nonsplit multiplicative";
    case Reduction::additive: return "additive";
  }
  return "?";
}

unsigned long KodairaType::components() const {
  using F = Family;
  switch (family) {
    case F::I0: return 1;
    case F::In: return n;
    case F::II: return 1;
    case F::III: return 2;
    case F::IV: return 3;
    case F::I0star: return 5;
    case F::Instar: return 5 + n;
    case F::IVstar: return 7;
    case F::IIIstar: return 8;
    case F::IIstar: return 9;
  }
  throw std::logic_error("unknown Kodaira family");
}

bool KodairaType::is_additive() const {
  return family != Family::I0 && family != Family::In;
}

std::string KodairaType::str() const {
  using F = Family;
  switch (family) {
    case F::I0: return "I0";
    case F::In: return "I" + std::to_string(n);
    case F::II: return "II";
    case F::III: return "III";
    case F::IV: return "IV";
    case F::I0star: return "I0*";
    case F::Instar: return "I" + std::to_string(n) + "*";
    case F::IVstar: return "IV*";
    case F::IIIstar: return "III*";
    case F::IIstar: return "II*";
  }
  throw std::logic_error("unknown Kodaira family");
}

KodairaType KodairaType::parse(const std::string& s) {
  using F = Family;
  if (s == "II") return {F::II};
  if (s == "III") return {F::III};
  if (s == "IV") return {F::IV};
  if (s == "II*") return {F::IIstar};
  if (s == "III*") return {F::IIIstar};
  if (s == "IV*") return {F::IVstar};
  if (s.size() >= 2 && s[0] == 'I') {
    bool star = s.back() == '*';
    std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() &&
        digits.find_first_not_of("0123456789") == std::string::npos) {
      unsigned long n = std::stoul(digits);
      if (star) return n == 0 ? KodairaType{F::I0star} : KodairaType{F::Instar, n};
      return n == 0 ? KodairaType{F::I0} : KodairaType{F::In, n};
    }
  }
  throw std::invalid_argument("unrecognized Kodaira symbol: " + s);
}

void LocalData::validate() const {
  auto fail = [&](const char* what) {
    throw std::logic_error(std::string("inconsistent local data at p=") +
                           p.get_str() + ": " + what);
  };
  using F = KodairaType::Family;
  if (components != kodaira.components()) fail("component count");
  if (f + components != vp_delta + 1) fail("discriminant/conductor/component relation");
  if ((kodaira.family == F::In || kodaira.family == F::Instar) && kodaira.n == 0)
    fail("n = 0 inside an n-indexed family");

  switch (kodaira.family) {
    case F::I0:
      if (f != 0 || vp_delta != 0 || reduction != Reduction::good) fail("I0 shape");
      break;
    case F::In:
      if (f != 1 || vp_delta != kodaira.n) fail("In shape");
      if (reduction != Reduction::split_multiplicative &&
          reduction != Reduction::nonsplit_multiplicative)
        fail("In must be multiplicative");
      break;
    default:
      if (reduction != Reduction::additive) fail("starred/II/III/IV must be additive");
      if (f < 2) fail("additive conductor exponent below 2");
      break;
  }
  if (p >= 5 && kodaira.is_additive() && f != 2)
    fail("conductor exponent must be exactly 2 for additive reduction at p >= 5");
  unsigned long cap = p == 2 ? 8 : p == 3 ? 5 : 2;
  if (f > cap) fail("conductor exponent exceeds its cap");
}

namespace {

constexpr unsigned long kInfVal = ULONG_MAX / 2;

unsigned long val(const Integer& p, const Integer& x) {
  return x == 0 ? kInfVal : vp(p, x);
}

/* In-place change of variables with u = 1: x -> x + r, y -> y + s x + t.
 * Leaves the discriminant unchanged. */
void shift(std::array<Integer, 5>& a, const Integer& r, const Integer& s,
           const Integer& t) {
  const Integer a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
  a[0] = a1 + 2 * s;
  a[1] = a2 - s * a1 + 3 * r - s * s;
  a[2] = a3 + r * a1 + 2 * t;
  a[3] = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
  a[4] = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
}

Integer inv_mod(const Integer& x, const Integer& m) {
  Integer r;
  if (!mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()))
    throw std::logic_error("expected invertible residue");
  return r;
}

/* Square root mod an odd prime (Tonelli-Shanks); requires a to be a square. */
Integer sqrt_mod(const Integer& a0, const Integer& p) {
  Integer a = mod_floor(a0, p);
  if (a == 0) return 0;
  if (mpz_legendre(a.get_mpz_t(), p.get_mpz_t()) != 1)
    throw std::logic_error("sqrt_mod of a non-residue");
  auto pw = [&](const Integer& base, const Integer& e) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  };
  if (mod_floor(p, 4) == 3) return pw(a, (p + 1) / 4);
  Integer q = p - 1;
  unsigned long s = 0;
  while (mod_floor(q, 2) == 0) { q /= 2; ++s; }
  Integer z = 2;
  while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Integer m(s), c = pw(z, q), t = pw(a, q), r = pw(a, (q + 1) / 2);
  while (t != 1) {
    Integer tt = t;
    unsigned long i = 0;
    while (tt != 1) { tt = mod_floor(tt * tt, p); ++i; }
    Integer b = c;
    for (unsigned long k = 0; k + i + 1 < m.get_ui(); ++k)
      b = mod_floor(b * b, p);
    m = i;
    c = mod_floor(b * b, p);
    t = mod_floor(t * c, p);
    r = mod_floor(r * b, p);
  }
  return r;
}

struct Curve {
  std::array<Integer, 5> a;
  const Integer& a1() const { return a[0]; }
  const Integer& a2() const { return a[1]; }
  const Integer& a3() const { return a[2]; }
  const Integer& a4() const { return a[3]; }
  const Integer& a6() const { return a[4]; }
  Integer b2() const { return a1() * a1() + 4 * a2(); }
  Integer b4() const { return 2 * a4() + a1() * a3(); }
  Integer b6() const { return a3() * a3() + 4 * a6(); }
  Integer b8() const {
    return a1() * a1() * a6() + 4 * a2() * a6() - a1() * a3() * a4() +
           a2() * a3() * a3() - a4() * a4();
  }
};

/* The singular point mod p of a curve with p | delta, as a centered lift.
 * It satisfies F = F_x = F_y = 0 mod p for
 * F = y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6. */
std::pair<Integer, Integer> singular_point(const Curve& E, const Integer& p) {
  auto F = [&](const Integer& x, const Integer& y) {
    return mod_floor(y * y + E.a1() * x * y + E.a3() * y - x * x * x -
                         E.a2() * x * x - E.a4() * x - E.a6(),
                     p);
  };
  auto Fx = [&](const Integer& x, const Integer& y) {
    return mod_floor(E.a1() * y - 3 * x * x - 2 * E.a2() * x - E.a4(), p);
  };
  auto Fy = [&](const Integer& x, const Integer& y) {
    return mod_floor(2 * y + E.a1() * x + E.a3(), p);
  };

  if (p <= 3) {
    for (Integer x = 0; x < p; ++x)
      for (Integer y = 0; y < p; ++y)
        if (F(x, y) == 0 && Fx(x, y) == 0 && Fy(x, y) == 0)
          return {mods(x, p), mods(y, p)};
    throw std::logic_error("no singular point despite p | delta");
  }

  /* p >= 5: y is determined by x, and x is a repeated root of
   * G(x) = 4x^3 + b2 x^2 + 2 b4 x + b6, so 6x^2 + b2 x + b4 = 0 whose
   * discriminant is c4. */
  const Integer b2 = E.b2(), b4 = E.b4(), b6 = E.b6();
  const Integer c4 = b2 * b2 - 24 * b4;
  auto G = [&](const Integer& x) {
    return mod_floor(4 * x * x * x + b2 * x * x + 2 * b4 * x + b6, p);
  };
  const Integer inv12 = inv_mod(12, p);
  std::vector<Integer> candidates;
  if (mod_floor(c4, p) == 0) {
    candidates.push_back(mod_floor(-b2 * inv12, p));
  } else {
    Integer rt = sqrt_mod(c4, p);
    candidates.push_back(mod_floor((-b2 + rt) * inv12, p));
    candidates.push_back(mod_floor((-b2 - rt) * inv12, p));
  }
  for (const Integer& x : candidates) {
    if (G(x) != 0) continue;
    Integer y = mod_floor(-(E.a1() * x + E.a3()) * inv_mod(2, p), p);
    if (F(x, y) == 0 && Fx(x, y) == 0 && Fy(x, y) == 0)
      return {mods(x, p), mods(y, p)};
  }
  throw std::logic_error("no singular point despite p | delta");
}

/* Root structure of T^3 + A T^2 + B T + C over F_p. */
struct CubicRoots {
  int multiplicity;  // 1: three distinct roots; 2: one double; 3: triple
  Integer root;      // the repeated root when multiplicity > 1
};

CubicRoots cubic_roots(const Integer& p, const Integer& A0, const Integer& B0,
                       const Integer& C0) {
  const Integer A = mod_floor(A0, p), B = mod_floor(B0, p), C = mod_floor(C0, p);
  if (p <= 3) {
    /* A repeated root of a cubic is unique, hence fixed by Galois and
     * liftable from F_p; scan for it. */
    for (Integer x = 0; x < p; ++x) {
      if (mod_floor(((x + A) * x + B) * x + C, p) != 0) continue;
      if (mod_floor((3 * x + 2 * A) * x + B, p) != 0) continue;
      bool triple = mod_floor(A + 3 * x, p) == 0 &&
                    mod_floor(B - 3 * x * x, p) == 0 &&
                    mod_floor(C + x * x * x, p) == 0;
      return {triple ? 3 : 2, mods(x, p)};
    }
    return {1, 0};
  }
  Integer disc = mod_floor(18 * A * B * C - 4 * A * A * A * C + A * A * B * B -
                               4 * B * B * B - 27 * C * C,
                           p);
  if (disc != 0) return {1, 0};
  if (mod_floor(A * A - 3 * B, p) == 0)
    return {3, mods(-A * inv_mod(3, p), p)};
  Integer alpha = mod_floor((9 * C - A * B) * inv_mod(2 * (A * A - 3 * B), p), p);
  return {2, mods(alpha, p)};
}

/* Does a X^2 + b X + c (a a unit mod p) have distinct roots over the
 * algebraic closure of F_p? */
bool quad_distinct_roots(const Integer& p, const Integer& a, const Integer& b,
                         const Integer& c) {
  if (p == 2) return mod_floor(b, 2) != 0;
  return mod_floor(b * b - 4 * a * c, p) != 0;
}

/* The repeated root of a X^2 + b X + c mod p (call only when not distinct). */
Integer quad_double_root(const Integer& p, const Integer& a, const Integer& b,
                         const Integer& c) {
  if (p == 2) return mod_floor(c * inv_mod(a, 2), 2);
  return mods(-b * inv_mod(2 * a, p), p);
}

}  // namespace

LocalData tate_local(const WeierstrassModel& model, const Integer& p) {
  if (!is_probable_prime(p))
    throw std::invalid_argument("tate_local: p is not prime");

  const Integer delta = model.delta();
  LocalData out;
  out.p = p;

  auto finish = [&](KodairaType type, unsigned long vd, Reduction red) {
    out.kodaira = type;
    out.vp_delta = vd;
    out.components = type.components();
    if (vd + 1 < out.components)
      throw std::logic_error("component count exceeds v(delta) + 1");
    out.f = vd + 1 - out.components;
    out.reduction = red;
    out.validate();
    return out;
  };

  if (mod_floor(delta, p) != 0)
    return finish({KodairaType::Family::I0}, 0, Reduction::good);
  const unsigned long vd = vp(p, delta);

  Curve E{model.coefficients()};
  auto vv = [&](const Integer& x) { return val(p, x); };

  /* Move the singular point to the origin. */
  auto [x0, y0] = singular_point(E, p);
  shift(E.a, x0, 0, y0);

  if (mod_floor(E.b2(), p) != 0) {
    bool split = p == 2 ? mod_floor(E.a2(), 2) == 0
                        : mpz_legendre(E.b2().get_mpz_t(), p.get_mpz_t()) == 1;
    return finish({KodairaType::Family::In, vd}, vd,
                  split ? Reduction::split_multiplicative
                        : Reduction::nonsplit_multiplicative);
  }

  if (vv(E.a6()) < 2) return finish({KodairaType::Family::II}, vd, Reduction::additive);
  if (vv(E.b8()) < 3) return finish({KodairaType::Family::III}, vd, Reduction::additive);
  if (vv(E.b6()) < 3) return finish({KodairaType::Family::IV}, vd, Reduction::additive);

  /* Normalize so that p | a1, a2; p^2 | a3, a4; p^3 | a6. */
  if (p == 2) {
    shift(E.a, 0, mod_floor(E.a2(), 2), 0);
    shift(E.a, 0, 0, 2 * mod_floor(divexact(E.a6(), 4), 2));
  } else {
    shift(E.a, 0, mods(-E.a1() * inv_mod(2, p), p), 0);
    Integer p2 = p * p;
    shift(E.a, 0, 0, mods(-E.a3() * inv_mod(2, p2), p2));
  }
  if (vv(E.a1()) < 1 || vv(E.a2()) < 1 || vv(E.a3()) < 2 || vv(E.a4()) < 2 ||
      vv(E.a6()) < 3)
    throw std::logic_error("normalization before the residual cubic failed");

  auto cubic = cubic_roots(p, divexact(E.a2(), p), divexact(E.a4(), p * p),
                           divexact(E.a6(), p * p * p));

  if (cubic.multiplicity == 1)
    return finish({KodairaType::Family::I0star}, vd, Reduction::additive);

  if (cubic.multiplicity == 2) {
    /* Chain of quadratic tests; each failed test refines the model. */
    shift(E.a, p * cubic.root, 0, 0);
    for (unsigned long q = 2;; ++q) {
      if (q > vd) throw std::logic_error("refinement loop exceeded v(delta)");
      Integer pq = pow_int(p, q);
      Integer A3 = divexact(E.a3(), pq), A6 = divexact(E.a6(), pq * pq);
      if (quad_distinct_roots(p, 1, A3, -A6))
        return finish({KodairaType::Family::Instar, 2 * q - 3}, vd,
                      Reduction::additive);
      shift(E.a, 0, 0, pq * quad_double_root(p, 1, A3, -A6));

      Integer A2 = divexact(E.a2(), p), A4 = divexact(E.a4(), pq * p),
              A6b = divexact(E.a6(), pq * pq * p);
      if (quad_distinct_roots(p, A2, A4, A6b))
        return finish({KodairaType::Family::Instar, 2 * q - 2}, vd,
                      Reduction::additive);
      shift(E.a, pq * quad_double_root(p, A2, A4, A6b), 0, 0);
    }
  }

  /* Triple root. */
  shift(E.a, p * cubic.root, 0, 0);
  Integer p2 = p * p;
  Integer A3 = divexact(E.a3(), p2), A6 = divexact(E.a6(), p2 * p2);
  if (quad_distinct_roots(p, 1, A3, -A6))
    return finish({KodairaType::Family::IVstar}, vd, Reduction::additive);
  shift(E.a, 0, 0, p2 * quad_double_root(p, 1, A3, -A6));

  if (vv(E.a4()) < 4)
    return finish({KodairaType::Family::IIIstar}, vd, Reduction::additive);
  if (vv(E.a6()) < 6)
    return finish({KodairaType::Family::IIstar}, vd, Reduction::additive);

  throw NonMinimalError("model is not minimal at p = " + p.get_str());
}

CurveAnalysis analyze_curve(const WeierstrassModel& m, const FactorPolicy& policy) {
  auto mm = minimal_model(m, policy);
  auto f = factor(mm.delta_min, policy);
  if (!f.complete())
    throw FactorBudgetError(
        "conductor requires the full factorization of the minimal discriminant",
        f.cofactor);

  CurveAnalysis out{std::move(mm.minimal), std::move(mm.to_minimal),
                    std::move(mm.delta_min), std::move(f), {}, 1};
  for (const auto& [p, e] : out.delta_factors.factors) {
    LocalData ld = tate_local(out.minimal, p);
    if (ld.vp_delta != e)
      throw std::logic_error("local valuation disagrees with the factorization");
    out.conductor *= pow_int(p, ld.f);
    out.locals.push_back(std::move(ld));
  }
  return out;
}

}  // namespace szpiro
