// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/arith.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "bsdtwins/errors.hpp"

namespace bsdtwins {

namespace {

const std::vector<unsigned long>& small_primes(unsigned long limit) {
  // Sieve once up to the largest limit ever requested (default 10^6).
  static const std::vector<unsigned long> primes = [] {
    constexpr unsigned long kMax = 1'000'000;
    std::vector<bool> composite(kMax + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long i = 2; i <= kMax; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j <= kMax; j += i) composite[j] = true;
    }
    return out;
  }();
  (void)limit;
  return primes;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Brent's cycle-finding variant of Pollard rho. Returns a nontrivial factor
// or 0 when the iteration cap is reached.
Int rho_split(const Int& n, const Int& c, const Int& x0, unsigned long cap) {
  constexpr unsigned long kBatch = 128;
  Int y = x0, x, ys, q = 1, g = 1;
  unsigned long r = 1, used = 0;
  auto step = [&](Int& v) {
    v = v * v + c;
    v %= n;
  };
  while (g == 1) {
    x = y;
    for (unsigned long i = 0; i < r; ++i) step(y);
    unsigned long k = 0;
    while (k < r && g == 1) {
      ys = y;
      unsigned long m = std::min(kBatch, r - k);
      for (unsigned long i = 0; i < m; ++i) {
        step(y);
        q = q * abs(x - y) % n;
      }
      g = gcd(q, n);
      k += m;
      used += m;
      if (used > cap) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      g = gcd(abs(x - ys), n);
    } while (g == 1);
  }
  return g == n ? Int(0) : g;
}

void split_into(const Int& n, const FactorBudget& budget, std::mt19937_64& rng,
                std::map<Int, unsigned long>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  if (is_square(n)) {
    Int r = sqrt(n);
    split_into(r, budget, rng, out);
    split_into(r, budget, rng, out);
    return;
  }
  for (unsigned attempt = 0; attempt < budget.rho_attempts; ++attempt) {
    Int c = Int(static_cast<unsigned long>(rng() % 1'000'000'007ULL)) + 1;
    Int x0 = Int(static_cast<unsigned long>(rng() % 1'000'000'007ULL)) + 2;
    Int d = rho_split(n, c, x0, budget.rho_iterations);
    if (d != 0 && d != 1 && d != n) {
      split_into(d, budget, rng, out);
      split_into(n / d, budget, rng, out);
      return;
    }
  }
  throw FactorBudgetExceeded("could not split composite cofactor " +
                             n.get_str() + " within the factoring budget");
}

}  // namespace

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw InvalidInput("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int ipow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int Factorization::value() const {
  Int v = sign;
  for (const auto& f : factors) v *= ipow(f.prime, f.exponent);
  return v;
}

std::string Factorization::to_string() const {
  std::ostringstream os;
  if (sign < 0) os << "-";
  if (factors.empty()) {
    os << "1";
    return os.str();
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << "*";
    os << factors[i].prime.get_str();
    if (factors[i].exponent != 1) os << "^" << factors[i].exponent;
  }
  return os.str();
}

bool is_prime(const Int& n) {
  if (n < 2) return false;
  // BPSW plus Miller-Rabin rounds; no known BPSW pseudoprime exists.
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

bool is_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

Factorization factor(const Int& n, const FactorBudget& budget) {
  if (n == 0) throw InvalidInput("cannot factor zero");
  Factorization result;
  result.sign = n < 0 ? -1 : 1;
  Int m = abs(n);
  std::map<Int, unsigned long> found;
  for (unsigned long p : small_primes(budget.trial_limit)) {
    if (p > budget.trial_limit) break;
    if (Int(p) * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), Int(p).get_mpz_t());
      found[Int(p)] = e;
    }
  }
  if (m > 1) {
    std::mt19937_64 rng(budget.seed);
    split_into(m, budget, rng, found);
  }
  for (auto& [p, e] : found) result.factors.push_back({p, e});
  return result;
}

int jacobi(const Int& a_in, const Int& n_in) {
  if (n_in < 1 || mpz_even_p(n_in.get_mpz_t())) {
    throw InvalidInput("jacobi: modulus must be odd and positive");
  }
  Int a = mod(a_in, n_in), n = n_in;
  int result = 1;
  while (a != 0) {
    while (mpz_even_p(a.get_mpz_t())) {
      a /= 2;
      unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) {
      result = -result;
    }
    a = mod(a, n);
  }
  return n == 1 ? result : 0;
}

Int squarefree_part(const Int& n, const FactorBudget& budget) {
  Factorization f = factor(n, budget);
  Int s = f.sign;
  for (const auto& pe : f.factors) {
    if (pe.exponent % 2) s *= pe.prime;
  }
  return s;
}

bool is_squarefree(const Int& n, const FactorBudget& budget) {
  if (n == 0) return false;
  Factorization f = factor(n, budget);
  return std::all_of(f.factors.begin(), f.factors.end(),
                     [](const PrimePower& pe) { return pe.exponent == 1; });
}

long valuation(const Int& n, const Int& p) {
  if (n == 0) throw InvalidInput("valuation of zero");
  Int m = n;
  return static_cast<long>(mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rat& x, const Int& p) {
  return valuation(Int(x.get_num()), p) - valuation(Int(x.get_den()), p);
}

Int unit_part(const Int& n, const Int& p) {
  if (n == 0) throw InvalidInput("unit part of zero");
  Int m = n;
  mpz_remove(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
  return m;
}

bool is_square_in_Qp(const Int& x, const Int& p) {
  if (x == 0) return true;
  if (valuation(x, p) % 2 != 0) return false;
  Int u = unit_part(x, p);
  if (p == 2) return mod(u, 8) == 1;
  return jacobi(u, p) == 1;
}

bool is_square_in_Qp(const Rat& x, const Int& p) {
  if (x == 0) throw InvalidInput("is_square_in_Qp: zero");
  // num/den and num*den share a square class.
  return is_square_in_Qp(Int(x.get_num() * x.get_den()), p);
}

Int sqrt_mod_prime(const Int& a_in, const Int& p) {
  Int a = mod(a_in, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (jacobi(a, p) != 1) throw NotASquare(a.get_str() + " is not a square mod " + p.get_str());
  Int r;
  if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
    Int e = (p + 1) / 4;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  Int q = p - 1;
  unsigned long s = mpz_remove(q.get_mpz_t(), q.get_mpz_t(), Int(2).get_mpz_t());
  Int z = 2;
  while (jacobi(z, p) != -1) ++z;
  Int c, t, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  unsigned long m = s;
  while (t != 1) {
    unsigned long i = 0;
    Int tt = t;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = b * b % p;
    r = r * b % p;
    c = b * b % p;
    t = t * c % p;
    m = i;
  }
  return r;
}

Int hensel_lift_sqrt(const Int& u, const Int& p, unsigned long precision) {
  if (precision == 0) throw InvalidInput("hensel_lift_sqrt: precision must be positive");
  const Int modulus = ipow(p, precision);
  if (mod(u, modulus) == 0) return 0;
  if (!is_square_in_Qp(u, p)) {
    throw NotASquare(u.get_str() + " is not a square in Z_" + p.get_str());
  }
  const unsigned long v = static_cast<unsigned long>(valuation(u, p));
  const unsigned long k = precision - v;  // v < precision here
  const Int w = unit_part(u, p);
  const Int mk = ipow(p, k);
  Int r;
  if (p == 2) {
    r = 1;
    for (unsigned long m = 3; m < k; ++m) {
      Int m1 = ipow(2, m + 1);
      if (mod(r * r - w, m1) != 0) r += ipow(2, m - 1);
    }
    r = mod(r, mk);
  } else {
    r = sqrt_mod_prime(w, p);
    // Newton iteration; 2r stays invertible modulo p^k.
    while (mod(r * r - w, mk) != 0) {
      Int inv, twice_r = 2 * r;
      mpz_invert(inv.get_mpz_t(), twice_r.get_mpz_t(), mk.get_mpz_t());
      r = mod(r - (r * r - w) * inv, mk);
    }
  }
  return mod(r * ipow(p, v / 2), modulus);
}

}  // namespace bsdtwins
