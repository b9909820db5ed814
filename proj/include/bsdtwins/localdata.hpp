// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <map>
#include <optional>
#include <string>

#include "bsdtwins/arith.hpp"
#include "bsdtwins/model.hpp"

namespace bsdtwins {

/// Reduction type of the special fibre of the Neron model at a prime.
struct KodairaSymbol {
  enum class Kind { I0, In, II, III, IV, I0Star, InStar, IVStar, IIIStar, IIStar };

  Kind kind = Kind::I0;
  long n = 0;  // only for In and InStar

  /// Number of geometric components of the special fibre.
  long components() const;
  std::string to_string() const;  // "I0", "I3", "III*", "I2*", ...
  std::string to_latex() const;   // "I_0^*", "III^*", ...
  static std::optional<KodairaSymbol> parse(const std::string& text);

  bool operator==(const KodairaSymbol&) const = default;
};

enum class ReductionType { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
std::string to_string(ReductionType r);

struct LocalData {
  Int p;
  KodairaSymbol kodaira;
  long conductor_exponent = 0;
  long tamagawa = 1;
  long components = 1;
  long min_disc_valuation = 0;
  ReductionType reduction = ReductionType::Good;
};

struct GlobalData {
  Int conductor;
  Int min_discriminant;
  std::map<Int, LocalData> local;  // bad primes only

  long tamagawa_product() const;
};

/// Tate's algorithm. The input need not be minimal at p; the returned data
/// describe the p-minimal model.
LocalData tate_algorithm(const WeierstrassModel& e, const Int& p);

/// Runs Tate's algorithm at every prime dividing the model discriminant.
GlobalData global_data(const WeierstrassModel& e, const FactorBudget& budget = {});

/// Ogg's formula v(Delta_min) = f + m - 1 (trivially 0 = 0 + 1 - 1 at good primes).
bool ogg_check(const LocalData& ld);

/// Number of distinct roots in F_p of the monic cubic T^3 + b T^2 + c T + d.
int cubic_root_count_mod_p(const Int& b, const Int& c, const Int& d, const Int& p);

}  // namespace bsdtwins
