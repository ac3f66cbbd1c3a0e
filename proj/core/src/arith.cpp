#include "szpiro/arith.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace szpiro {

Integer Factorization::recompose() const {
  Integer out = cofactor;
  for (const auto& [p, e] : factors) {
    Integer pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    out *= pe;
  }
  return out;
}

unsigned Factorization::exponent_of(const Integer& p) const {
  for (const auto& [q, e] : factors)
    if (q == p) return e;
  return 0;
}

unsigned long vp(const Integer& p, const Integer& n) {
  if (p < 2) throw std::invalid_argument("vp: p must be >= 2");
  if (n == 0) throw std::domain_error("vp: valuation of zero");
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

long vp_rational(const Integer& p, const Rational& q) {
  if (sgn(q) == 0) throw std::domain_error("vp_rational: valuation of zero");
  return static_cast<long>(vp(p, Integer(q.get_num()))) -
         static_cast<long>(vp(p, Integer(q.get_den())));
}

const std::vector<std::uint32_t>& small_primes(std::uint32_t bound) {
  static std::mutex mu;
  static std::vector<std::uint32_t> primes;
  static std::uint32_t sieved_to = 0;
  std::lock_guard<std::mutex> lock(mu);
  if (bound > sieved_to) {
    std::uint32_t limit = std::max<std::uint32_t>(bound, 1u << 16);
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    primes.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      primes.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    sieved_to = limit;
  }
  return primes;
}

Integer num_abs(const Rational& q) { return abs(Integer(q.get_num())); }

Integer den(const Rational& q) { return Integer(q.get_den()); }

Rational make_rational(const Integer& num, const Integer& d) {
  if (d == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, d);
  q.canonicalize();
  return q;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  if (m <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer mods(const Integer& a, const Integer& m) {
  Integer r = mod_floor(a, m);
  if (2 * r > m) r -= m;
  return r;
}

Integer pow_int(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Integer divexact(const Integer& a, const Integer& b) {
  if (b == 0) throw std::invalid_argument("divexact: division by zero");
  Integer q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r != 0) throw std::logic_error("divexact: inexact division");
  return q;
}

namespace {

/* One Miller-Rabin round; true means `a` proves n composite. n odd, >= 3. */
bool mr_witness(const Integer& n, const Integer& a, const Integer& d, unsigned long s) {
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return false;
  for (unsigned long i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n - 1) return false;
  }
  return true;
}

/* Below this bound the fixed witness set {2,...,41} is deterministic. */
const Integer kMrDeterministicBound("3317044064679887385961981");

}  // namespace

bool is_probable_prime(const Integer& n, const FactorPolicy& policy) {
  if (n < 2) return false;
  static const unsigned tiny[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned t : tiny) {
    if (n == t) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), t)) return false;
  }
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (unsigned t : tiny)
    if (mr_witness(n, Integer(t), d, s)) return false;
  if (n < kMrDeterministicBound) return true;
  // Pseudo-random rounds, seeded from n so repeated queries agree.
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x9e3779b97f4a7c15ULL ^ mpz_fdiv_ui(n.get_mpz_t(), 0xFFFFFFFBUL));
  for (unsigned i = 0; i < policy.mr_rounds; ++i) {
    Integer a = rng.get_z_range(n - 3) + 2;  // in [2, n-2]
    if (mr_witness(n, a, d, s)) return false;
  }
  return true;
}

namespace {

/* Pollard rho with Brent cycle detection and batched gcds. Returns a proper
 * factor of odd composite n, or nullopt once `budget` iterations are spent.
 * `budget` is decremented in place so retries share one allowance. */
std::optional<Integer> rho_brent(const Integer& n, std::uint64_t& budget) {
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0xc2b2ae3d27d4eb4fULL ^ mpz_fdiv_ui(n.get_mpz_t(), 0xFFFFFFFBUL));
  for (unsigned attempt = 0; attempt < 64; ++attempt) {
    Integer c = rng.get_z_range(n - 3) + 1;
    Integer y = rng.get_z_range(n - 2) + 1;
    Integer g = 1, q = 1, x, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      for (unsigned long k = 0; k < r && g == 1; k += m) {
        ys = y;
        unsigned long chunk = std::min(m, r - k);
        if (budget < chunk) return std::nullopt;
        budget -= chunk;
        for (unsigned long i = 0; i < chunk; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time to recover the factor.
      do {
        if (budget == 0) return std::nullopt;
        --budget;
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return std::nullopt;
}

/* Largest k >= 2 with n an exact k-th power, with the root; nullopt if none. */
std::optional<std::pair<Integer, unsigned long>> perfect_power(const Integer& n) {
  if (n < 4 || !mpz_perfect_power_p(n.get_mpz_t())) return std::nullopt;
  unsigned long max_k = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (unsigned long k = max_k; k >= 2; --k) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) return std::make_pair(root, k);
  }
  return std::nullopt;
}

}  // namespace

Factorization factor(const Integer& n, const FactorPolicy& policy) {
  if (n == 0) throw std::domain_error("factor: factorization of zero");
  Integer m = abs(n);
  std::map<Integer, unsigned> found;
  if (m > 1) {
    const auto& primes = small_primes(
        static_cast<std::uint32_t>(std::min<std::uint64_t>(policy.trial_bound, 0xFFFFFFFeULL)));
    for (std::uint32_t p : primes) {
      if (p > policy.trial_bound) break;
      if (Integer(p) * p > m) break;
      if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) continue;
      unsigned e = 0;
      do {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
      found[Integer(p)] += e;
    }
    // Whatever survives trial division is 1, a prime, or has only factors
    // above the bound (or above sqrt at early break).
  }
  Factorization out;
  std::uint64_t budget = policy.rho_budget;
  std::vector<std::pair<Integer, unsigned>> pending;  // (value, multiplicity)
  if (m > 1) pending.emplace_back(m, 1);
  while (!pending.empty()) {
    auto [v, mult] = pending.back();
    pending.pop_back();
    if (v == 1) continue;
    if (is_probable_prime(v, policy)) {
      found[v] += mult;
      continue;
    }
    if (auto pp = perfect_power(v)) {
      pending.emplace_back(pp->first, mult * static_cast<unsigned>(pp->second));
      continue;
    }
    if (auto g = rho_brent(v, budget)) {
      pending.emplace_back(*g, mult);
      pending.emplace_back(v / *g, mult);
      continue;
    }
    // Budget exhausted: fold the composite into the cofactor.
    out.cofactor *= pow_int(v, mult);
  }
  out.factors.assign(found.begin(), found.end());
  return out;
}

}  // namespace szpiro
