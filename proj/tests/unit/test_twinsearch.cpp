// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include <cmath>

#include "bsdtwins/errors.hpp"
#include "bsdtwins/torsion.hpp"
#include "bsdtwins/twinsearch.hpp"
#include "oracles.hpp"

using namespace bsdtwins;

namespace {

const TwoIsogeny kBase = two_isogeny(25350, 2471625);

std::vector<Int> as_ints(const std::vector<long long>& v) {
  std::vector<Int> out;
  for (long long x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

}  // namespace

TEST_CASE("base pair condition accepts and rejects") {
  const TwistCondition c = base_pair_condition();
  CHECK(c.accepts(17));
  CHECK_FALSE(c.accepts(41));
  CHECK_FALSE(c.accepts(9));
  CHECK_FALSE(c.accepts(-17));
  CHECK(c.prime);
  CHECK(c.coprime_to == 390);
  // 41 = 1 mod 8 and 2 mod 3, but 1 mod 5 and 2 mod 13.
  std::vector<std::string> failed;
  for (const auto& d : c.diagnose(41))
    if (!d.passed) failed.push_back(d.rule);
  CHECK(failed == std::vector<std::string>{"(D/5) = -1", "(D/13) = 1"});
}

TEST_CASE("sieve matches the exhaustive oracle") {
  const TwistCondition c = base_pair_condition();
  CHECK(sieve(c, 16).empty());
  CHECK(sieve(c, 300) == std::vector<Int>{17, 113, 233, 257});
  CHECK(sieve(c, 300) == as_ints(oracle::twin_primes(300)));
  const std::vector<Int> big = sieve(c, 20'000);
  CHECK(big == as_ints(oracle::twin_primes(20'000)));
  for (const Int& D : big) {
    CHECK(gcd(D, Int(390)) == 1);
    for (const auto& d : c.diagnose(D)) CHECK_MESSAGE(d.passed, d.rule, " for ", D);
  }
  CHECK_THROWS_AS(sieve(c, 1), InvalidInput);
}

TEST_CASE("parallel sieve matches the serial one") {
  SieveOptions opts;
  opts.parallelism = 4;
  CHECK(sieve(base_pair_condition(), 20'000, opts) == sieve(base_pair_condition(), 20'000));
}

TEST_CASE("generic condition for D0 = 17 agrees with the base pair condition on primes") {
  const TwistCondition g = generic_condition(kBase, 17), p = base_pair_condition();
  CHECK_FALSE(g.prime);
  CHECK(g.accepts(233));
  long primes = 0;
  for (long D = 2; D <= 10'000; ++D) {
    if (!oracle::is_prime(D)) continue;
    CHECK_MESSAGE(g.accepts(D) == p.accepts(D), "D = ", D);
    ++primes;
  }
  CHECK(primes == 1229);
}

TEST_CASE("generic condition means a local square at every bad place") {
  // Bad primes of the base pair are 2, 3, 5, 13.
  for (long D0 : {1L, 17L, -1L, 3L, 10L, -195L}) {
    const TwistCondition g = generic_condition(kBase, D0);
    for (long D = -3000; D <= 3000; ++D) {
      if (D == 0 || !oracle::is_squarefree(D)) continue;
      bool ref = (D > 0) == (D0 > 0);
      for (long q : {2L, 3L, 5L, 13L}) ref = ref && oracle::square_in_Qp(Int(D) * D0, q);
      CHECK_MESSAGE(g.accepts(D) == ref, "D0 = ", D0, " D = ", D);
    }
  }
  CHECK_THROWS_AS(generic_condition(kBase, 0), InvalidInput);
}

TEST_CASE("torsion guard keeps Z/2Z twists") {
  SieveOptions opts;
  opts.torsion_guard = true;
  opts.iso = &kBase;
  const std::vector<Int> guarded = sieve(base_pair_condition(), 300, opts);
  CHECK(guarded == sieve(base_pair_condition(), 300));
  for (const Int& D : guarded) {
    const TwoIsogeny t = twist(kBase, D);
    CHECK(torsion_subgroup(t.domain.model()).to_string() == "Z/2Z");
    CHECK(torsion_subgroup(t.codomain.model()).to_string() == "Z/2Z");
  }
}

TEST_CASE("residue rule rendering") {
  const ResidueRule r{ResidueRule::Kind::Residues, 8, {1}, 1};
  CHECK(r.to_string() == "D = 1 mod 8");
  CHECK(r.accepts(17));
  CHECK(r.accepts(-7));
  CHECK_FALSE(r.accepts(5));
  const ResidueRule j{ResidueRule::Kind::Jacobi, 3, {}, -1};
  CHECK(j.to_string() == "(D/3) = -1");
  CHECK(j.accepts(2));
  CHECK_FALSE(j.accepts(3));
}

TEST_CASE("alpha00 against a direct product") {
  long double ref = 1;
  double previous = 1;
  for (int s = 1; s <= 64; ++s) {
    ref *= 1 - std::ldexp(1.0L, -s);
    const double a = alpha00(s);
    CHECK((s > 50 ? a <= previous : a < previous));
    previous = a;
  }
  CHECK(alpha00(1) == 0.5);
  CHECK(std::fabs(alpha00() - static_cast<double>(ref)) < 1e-15);
  CHECK(alpha00() > 0.288);
  CHECK(alpha00() < 0.289);
  CHECK(std::fabs(alpha00() - 0.2887880951) < 1e-9);
}
