// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <string>
#include <vector>

#include "bsdtwins/isogeny.hpp"

namespace bsdtwins {

/// One local requirement on D.
struct ResidueRule {
  enum class Kind { Residues, Jacobi } kind = Kind::Residues;
  Int modulus;               // modulus (Residues) or odd prime (Jacobi)
  std::vector<Int> allowed;  // Residues: accepted classes mod `modulus`
  int symbol = 1;            // Jacobi: required value of (D / modulus)

  bool accepts(const Int& D) const;
  std::string to_string() const;  // "D = 1 mod 8", "(D/3) = -1"
};

struct TwistCondition {
  std::vector<ResidueRule> rules;
  int sign = 1;  // required sign of D, 0 for none
  Int coprime_to = 1;
  bool prime = true;
  bool squarefree = true;  // checked when `prime` is off

  struct Diagnostic {
    std::string rule;
    bool passed;
  };
  bool accepts(const Int& D) const;
  std::vector<Diagnostic> diagnose(const Int& D) const;
  std::string to_string() const;
};

/// D prime, D = 1 mod 8, (D/3) = (D/5) = -1, (D/13) = 1, gcd(D, 390) = 1.
TwistCondition base_pair_condition();

/// D D0 a square in Q_v for every v in S of the isogeny (sign at infinity,
/// mod 8 at 2, quadratic character at odd p). Primality is not imposed.
TwistCondition generic_condition(const TwoIsogeny& iso, const Int& D0);

struct SieveOptions {
  unsigned parallelism = 1;
  bool torsion_guard = false;  // also require E_i^D torsion = Z/2Z
  const TwoIsogeny* iso = nullptr;
};

/// Qualifying D in [2, limit], ascending.
std::vector<Int> sieve(const TwistCondition& cond, const Int& limit, const SieveOptions& opts = {});

/// prod_{s=1}^{terms} (1 - 2^-s).
double alpha00(int terms = 64);

}  // namespace bsdtwins
