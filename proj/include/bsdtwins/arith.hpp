// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace bsdtwins {

using Int = mpz_class;
using Rat = mpq_class;

/// Builds a canonical rational (reduced, positive denominator).
Rat make_rat(const Int& num, const Int& den = 1);

/// Nonnegative remainder of `a` modulo `m` (m > 0).
Int mod(const Int& a, const Int& m);

/// Limits for `factor`. Trial division runs up to `trial_limit`; the
/// remaining cofactor is split with Brent's variant of Pollard rho.
struct FactorBudget {
  unsigned long trial_limit = 1'000'000;
  unsigned long rho_iterations = 4'000'000;  // per attempt
  unsigned rho_attempts = 24;
  std::uint64_t seed = 0x5eed'2b5d'0c0f'fee5ULL;
};

struct PrimePower {
  Int prime;
  unsigned long exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;  // strictly increasing primes

  Int value() const;
  std::string to_string() const;  // e.g. "2^8*3^2*5^3"
};

Factorization factor(const Int& n, const FactorBudget& budget = {});

bool is_prime(const Int& n);

/// Jacobi symbol (a/n) for odd n >= 1.
int jacobi(const Int& a, const Int& n);

/// Squarefree s with n/s a positive square (sign(s) == sign(n)).
Int squarefree_part(const Int& n, const FactorBudget& budget = {});
bool is_squarefree(const Int& n, const FactorBudget& budget = {});

/// Perfect square test over Z.
bool is_square(const Int& n);

long valuation(const Int& n, const Int& p);
long valuation(const Rat& x, const Int& p);

/// n / p^valuation(n, p).
Int unit_part(const Int& n, const Int& p);

// Square classes in Q_p: even valuation, and the unit part is a nonzero
// residue mod p (odd p) or congruent to 1 mod 8 (p = 2).
bool is_square_in_Qp(const Rat& x, const Int& p);
bool is_square_in_Qp(const Int& x, const Int& p);

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
Int sqrt_mod_prime(const Int& a, const Int& p);

/// r with r^2 = u (mod p^precision). Throws NotASquare when u is not a
/// square in Z_p.
Int hensel_lift_sqrt(const Int& u, const Int& p, unsigned long precision);

Int ipow(const Int& base, unsigned long exp);

}  // namespace bsdtwins
