// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include "bsdtwins/descent.hpp"
#include "bsdtwins/errors.hpp"
#include "oracles.hpp"

using namespace bsdtwins;
using O = Obstruction;

namespace {

const TwoIsogeny kBase = two_isogeny(25350, 2471625);

// (A, B) with |16 B^2 (A^2 - 4B)| <= bound.
std::vector<std::pair<long, long>> small_curves(long bound) {
  std::vector<std::pair<long, long>> out;
  for (long A = -40; A <= 40; ++A)
    for (long B = -40; B <= 40; ++B) {
      const long disc = 16 * B * B * (A * A - 4 * B);
      if (disc != 0 && std::labs(disc) <= bound) out.push_back({A, B});
    }
  return out;
}

Int sf(const Int& n) { return squarefree_part(n); }

}  // namespace

TEST_CASE("phi-Selmer group of the twist by 17") {
  const TwoIsogeny iso = twist(kBase, 17);
  const SelmerContext ctx = SelmerContext::make(iso);
  CHECK(q_s_2(ctx).size() == 64);
  const SelmerGroup phi = selmer_group(iso, Direction::Phi);
  CHECK(phi.elements == std::vector<Int>{1, 65});
  CHECK(phi.dimension == 1);
  const SelmerGroup phihat = selmer_group(iso, Direction::PhiHat);
  CHECK(phihat.dimension == 1);
  CHECK(tamagawa_ratio(phi, phihat) == 1);
  const DescentVerdict v = sel2_bound_and_deduce(
      phi.dimension, phihat.dimension, iso, torsion_subgroup(iso.domain.model()),
      torsion_subgroup(iso.codomain.model()));
  CHECK(v.sel2_bound[0] <= 1);
  CHECK(v.sel2_bound[1] <= 1);
  CHECK(v.rank_zero_proven());
  CHECK(v.sha2_trivial_proven());
}

TEST_CASE("local insolubility certificates for the twist by 17") {
  const TwoIsogeny iso = twist(kBase, 17);
  const struct {
    long d, p;
  } table[] = {{2, 5}, {13, 5}, {17, 5}, {85, 13}, {34, 13}, {170, 17}, {10, 2}};
  for (const auto& [d, p] : table) {
    const LocalCertificate c = locally_soluble(torsor(iso, d, Direction::Phi), Place{p});
    CHECK_MESSAGE(!c.soluble, "d = ", d, " p = ", p);
  }
  // v(x) >= 0 fails on a residue, v(x) < 0 on an odd valuation.
  for (long d : {2L, 17L}) {
    const LocalCertificate c = locally_soluble(torsor(iso, d, Direction::Phi), Place{5});
    CHECK(c.affine == std::set<O>{O::NonResidue});
    CHECK(c.inverted == std::set<O>{O::OddValuation});
  }
  // At 2: odd valuation for v(x) >= 0, residues mod 8 at v(x) = -1, -2 and
  // odd valuations below.
  const LocalCertificate c10 = locally_soluble(torsor(iso, 10, Direction::Phi), Place{2});
  CHECK(c10.affine == std::set<O>{O::OddValuation});
  CHECK(c10.inverted == std::set<O>{O::NonResidue, O::OddValuation});
  const LocalCertificate neg = locally_soluble(torsor(iso, -1, Direction::Phi), Place::infinity());
  CHECK(neg.all_obstructions() == std::set<O>{O::RealSign});
  const LocalCertificate at65 = locally_soluble(torsor(iso, 65, Direction::Phi), Place{5});
  CHECK(at65.soluble);
}

TEST_CASE("every class outside the Selmer group has a failing place") {
  const TwoIsogeny iso = twist(kBase, 17);
  for (Direction dir : {Direction::Phi, Direction::PhiHat}) {
    const SelmerGroup g = selmer_group(iso, dir);
    CHECK(g.classes.size() == 64);
    for (const SelmerClass& c : g.classes) {
      REQUIRE(c.local.size() == g.places.size());
      bool all = true;
      for (const auto& l : c.local) all = all && l.soluble;
      CHECK(all == c.in_selmer);
      CHECK(g.contains(c.d) == c.in_selmer);
    }
  }
}

TEST_CASE("depth cap is enforced") {
  const TwoIsogeny iso = twist(kBase, 17);
  SolubilityOptions opts;
  opts.depth_cap_override = 1;
  CHECK_THROWS_AS(locally_soluble(torsor(iso, 10, Direction::Phi), Place{2}, opts), UndecidedAtDepth);
}

TEST_CASE("parallel Selmer computation matches the serial one") {
  const TwoIsogeny iso = twist(kBase, 233);
  SelmerOptions serial, parallel;
  parallel.parallelism = 4;
  for (Direction dir : {Direction::Phi, Direction::PhiHat}) {
    const SelmerGroup a = selmer_group(iso, dir, serial), b = selmer_group(iso, dir, parallel);
    CHECK(a.elements == b.elements);
    REQUIRE(a.classes.size() == b.classes.size());
    for (size_t i = 0; i < a.classes.size(); ++i)
      for (size_t k = 0; k < a.classes[i].local.size(); ++k)
        CHECK(a.classes[i].local[k].summary() == b.classes[i].local[k].summary());
  }
}

TEST_CASE("local solubility agrees with residue lifting mod p^8") {
  long decided = 0, undetermined = 0, insoluble = 0;
  for (const auto& [A, B] : small_curves(10'000)) {
    const TwoIsogeny iso = two_isogeny(A, B);
    const SelmerContext ctx = SelmerContext::make(iso);
    for (Direction dir : {Direction::Phi, Direction::PhiHat}) {
      for (const Int& d : q_s_2(ctx)) {
        const TorsorQuartic t = torsor(iso, d, dir);
        CHECK(locally_soluble(t, Place::infinity()).soluble == oracle::real_soluble(t.d, t.a, t.b));
        for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
          const oracle::Local ref = oracle::local_solubility(t.d, t.a, t.b, p);
          if (ref == oracle::Local::Undetermined) {
            ++undetermined;
            continue;
          }
          const LocalCertificate c = locally_soluble(t, Place{p});
          CHECK_MESSAGE(c.soluble == (ref == oracle::Local::Soluble), t.to_string(), " at ", p);
          if (!c.soluble) ++insoluble;
          ++decided;
        }
      }
    }
  }
  MESSAGE("decided ", decided, ", insoluble ", insoluble, ", undetermined ", undetermined);
  CHECK(decided > 5000);
  CHECK(insoluble > 500);
  CHECK(undetermined * 100 < decided);
}

TEST_CASE("Selmer groups are subgroups containing the known images") {
  oracle::Gen gen(61);
  int curves = 0;
  while (curves < 60) {
    const long A = gen.range(-60, 60), B = gen.nonzero(-300, 300);
    if (A * A == 4 * B) continue;
    const TwoIsogeny iso = two_isogeny(A, B);
    for (Direction dir : {Direction::Phi, Direction::PhiHat}) {
      const SelmerGroup g = selmer_group(iso, dir);
      CHECK(g.contains(1));
      CHECK(g.elements.size() == (size_t{1} << g.dimension));
      for (const Int& x : g.elements)
        for (const Int& y : g.elements) CHECK(g.contains(sf(x * y)));
      // The torsor for d has points at infinity when b/d is a square, so
      // the class of b is always present.
      const TorsorQuartic t1 = torsor(iso, 1, dir);
      CHECK(g.contains(sf(t1.b)));
      // Images of integral points: y^2 = x (x^2 + a x + b) gives the class of x.
      for (long x = -3000; x <= 3000; ++x) {
        if (x == 0) continue;
        const Int rhs = Int(x) * (Int(x) * x + t1.a * x + t1.b);
        if (rhs >= 0 && is_square(rhs)) CHECK_MESSAGE(g.contains(sf(Int(x))), A, " ", B, " x = ", x);
      }
    }
    ++curves;
  }
}

TEST_CASE("bound arithmetic") {
  const int q[2] = {1, 1}, t[2] = {1, 1};
  const DescentVerdict v = sel2_bound_and_deduce(1, 1, q, t);
  CHECK(v.sel2_bound[0] == 1);
  CHECK(v.rank.to_string() == "0");
  CHECK(v.rank_zero_proven());
  const DescentVerdict w = sel2_bound_and_deduce(2, 1, q, t);
  CHECK(w.rank.lo == 0);
  CHECK(w.rank.hi == 1);
  CHECK_FALSE(w.sha2_trivial_proven());
  CHECK(tamagawa_ratio(3, 1) == 4);
  CHECK(tamagawa_ratio(1, 3) == Rat(1, 4));
}
