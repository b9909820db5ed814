// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "bsdtwins/isogeny.hpp"
#include "bsdtwins/torsion.hpp"

namespace bsdtwins {

/// Which Selmer group of the pair E1 -phi-> E2 is computed: Sel^phi(E1) or
/// Sel^phihat(E2).
enum class Direction { Phi, PhiHat };
std::string to_string(Direction d);

/// A place of Q; p == 0 encodes the real place.
struct Place {
  Int p;

  static Place infinity() { return {Int(0)}; }
  bool is_infinite() const { return p == 0; }
  std::string to_string() const { return is_infinite() ? "inf" : p.get_str(); }
  bool operator==(const Place&) const = default;
};

struct SelmerContext {
  TwoIsogeny iso;
  std::vector<Place> places;  // inf, 2, then the odd primes of S ascending
  std::vector<Int> basis;     // -1 followed by the finite primes of S

  /// S = {inf, 2} plus the primes dividing disc(domain) * disc(codomain).
  static SelmerContext make(const TwoIsogeny& iso, const FactorBudget& budget = {});
};

/// All 2^#basis squarefree products of basis subsets, in bitmask order.
std::vector<Int> q_s_2(const SelmerContext& ctx);

/// d y^2 = d^2 + a d x^2 + b x^4.
struct TorsorQuartic {
  Int d, a, b;

  /// Coefficients (d^2, a d, b) of the right-hand side in x^0, x^2, x^4.
  std::array<Int, 3> coefficients() const { return {d * d, a * d, b}; }
  std::string to_string() const;
};

/// Phi: (a, b) is the codomain (A', B'). PhiHat: the reduced domain (A, B),
/// equivalent to (4A, 16B) under x -> x/2.
TorsorQuartic torsor(const TwoIsogeny& iso, const Int& d, Direction dir);

enum class Obstruction { NonResidue, OddValuation, RealSign };
std::string to_string(Obstruction o);

/// Outcome of a local solubility test at one place.
struct LocalCertificate {
  Place place;
  bool soluble = false;
  /// For soluble tests: how the point was found, e.g.
  /// "infinity", "x=0 (square value)", "x=3+O(5^2) (Hensel root)".
  std::string witness;
  /// For insoluble tests: obstructions met on x in Z_p (affine) and on
  /// 1/x in pZ_p including the points at infinity (inverted).
  std::set<Obstruction> affine;
  std::set<Obstruction> inverted;
  long nodes = 0;

  std::set<Obstruction> all_obstructions() const;
  std::string summary() const;
};

struct SolubilityOptions {
  long depth_cap_override = 0;  // 0: derived from the quartic
};

/// Decides whether the projective closure of the torsor has a Q_v-point.
/// Throws UndecidedAtDepth if the residue tree exceeds the depth cap.
LocalCertificate locally_soluble(const TorsorQuartic& t, const Place& v,
                                 const SolubilityOptions& opts = {});

struct SelmerClass {
  Int d;
  std::vector<LocalCertificate> local;  // one per place of S, same order
  bool in_selmer = false;
};

struct SelmerGroup {
  Direction direction = Direction::Phi;
  std::vector<Place> places;
  std::vector<SelmerClass> classes;
  std::vector<Int> elements;  // ascending
  int dimension = 0;

  bool contains(const Int& d) const;
};

struct SelmerOptions {
  SolubilityOptions solubility;
  unsigned parallelism = 1;
  FactorBudget budget;
};

SelmerGroup selmer_group(const TwoIsogeny& iso, Direction dir, const SelmerOptions& opts = {});

/// Closed interval of nonnegative integers.
struct Interval {
  long lo = 0, hi = 0;
  bool proven() const { return lo == hi; }
  std::string to_string() const;
};

struct DescentVerdict {
  int dim_sel_phi = 0;
  int dim_sel_phihat = 0;
  int quotient_dim[2] = {0, 0};      // E2[phihat]/phi(E1[2]), E1[phi]/phihat(E2[2])
  int two_torsion_dim[2] = {0, 0};   // dim E_i(Q)[2]
  int sel2_bound[2] = {0, 0};        // dim Sel^2(E_i) <=
  Interval rank;
  Interval sha2_dim[2];
  Rat tamagawa_ratio;

  bool rank_zero_proven() const { return rank.proven() && rank.lo == 0; }
  bool sha2_trivial_proven() const {
    return sha2_dim[0].proven() && sha2_dim[0].lo == 0 && sha2_dim[1].proven() &&
           sha2_dim[1].lo == 0;
  }
};

/// Bound arithmetic from the exact sequences
///   0 -> E2[phihat]/phi(E1[2]) -> Sel^phi(E1) -> Sel^2(E1) -> Sel^phihat(E2)
/// and its mirror image.
DescentVerdict sel2_bound_and_deduce(int e, int f, const int quotient_dim[2],
                                     const int two_torsion_dim[2]);

/// Same, with the quotient and 2-torsion dimensions read off the isogeny
/// and the torsion subgroups of domain and codomain.
DescentVerdict sel2_bound_and_deduce(int e, int f, const TwoIsogeny& iso,
                                     const TorsionGroup& t1, const TorsionGroup& t2);

/// #Sel^phi(E1) / #Sel^phihat(E2) = 2^(e - f).
Rat tamagawa_ratio(int e, int f);
Rat tamagawa_ratio(const SelmerGroup& phi, const SelmerGroup& phihat);

}  // namespace bsdtwins
