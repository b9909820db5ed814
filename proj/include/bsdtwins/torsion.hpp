// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <string>
#include <vector>

#include "bsdtwins/model.hpp"

namespace bsdtwins {

/// E(Q)_tors as Z/n1 x Z/n2 with n1 | n2 (n1 is 1 or 2 over Q).
struct TorsionGroup {
  long n1 = 1;
  long n2 = 1;
  std::vector<RationalPoint> generators;
  std::vector<RationalPoint> points;  // every torsion point, infinity excluded

  long order() const { return n1 * n2; }
  /// Mazur's list: Z/n (n <= 10 or 12) and Z/2 x Z/2n (n <= 4).
  bool in_mazur_list() const;
  /// Invariants (a, b) of the 2-primary part Z/a x Z/b.
  std::pair<long, long> two_primary() const;
  std::string to_string() const;  // "Z/2Z", "Z/2Z x Z/4Z", "0"

  bool same_structure(const TorsionGroup& o) const { return n1 == o.n1 && n2 == o.n2; }
};

enum class RankProvenance { ProvenByDescent, Assumed, External, Unknown };
std::string to_string(RankProvenance p);

struct MordellWeilGroup {
  long rank = 0;
  RankProvenance provenance = RankProvenance::Unknown;
  TorsionGroup torsion;

  std::string to_string() const;  // "Z/2Z", "Z^1 x Z/2Z", "Z^? x Z/2Z"
};

/// #E~(F_p) for an odd prime p of good reduction for the given model.
long count_points_mod_p(const WeierstrassModel& e, long p);

/// Exact torsion subgroup: reduction bound, then Nagell-Lutz enumeration.
TorsionGroup torsion_subgroup(const WeierstrassModel& e);

/// Rational 2-torsion of y^2 = x(x^2 + A x + B); always contains (0, 0).
std::vector<RationalPoint> two_torsion_points(const WeierstrassModel& ab_model);

/// Integer roots of x^3 + a x^2 + b x + c, ascending.
std::vector<Int> integer_roots_cubic(const Int& a, const Int& b, const Int& c);

}  // namespace bsdtwins
