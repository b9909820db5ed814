// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include "bsdtwins/torsion.hpp"
#include "oracles.hpp"

using namespace bsdtwins;

namespace {

// Order of a torsion point by repeated addition, 0 if above 12.
long order_of(const Curve<Rat>& c, const RationalPoint& p) {
  RationalPoint q = p;
  for (long n = 1; n <= 12; ++n) {
    if (q.infinity) return n;
    q = point_add(c, q, p);
  }
  return 0;
}

void check_consistent(const WeierstrassModel& e, const TorsionGroup& t) {
  const Curve<Rat> c = curve_over<Rat>(e);
  CHECK(t.in_mazur_list());
  CHECK(t.n2 % t.n1 == 0);
  CHECK(static_cast<long>(t.points.size()) == t.order() - 1);
  for (const auto& p : t.points) {
    CHECK(on_curve(c, p));
    const long n = order_of(c, p);
    CHECK(n > 0);
    CHECK(t.n2 % n == 0);
  }
  // Reduction is injective on torsion at odd primes of good reduction.
  const Int disc = discriminant(e);
  for (long p = 3; p < 60; ++p) {
    if (!oracle::is_prime(p) || disc % p == 0) continue;
    CHECK(oracle::count_points(e, p) % t.order() == 0);
  }
}

// Tate normal form y^2 + (1 - c) xy - b y = x^3 - b x^2, on which (0, 0)
// has order n for the parametrisations below.
WeierstrassModel tate_normal(const Int& b, const Int& c) { return {1 - c, -b, -b, 0, 0}; }

}  // namespace

TEST_CASE("torsion of random models is consistent") {
  oracle::Gen gen(41);
  for (int i = 0; i < 300; ++i) {
    const WeierstrassModel e = gen.model(300);
    check_consistent(e, torsion_subgroup(e));
  }
}

TEST_CASE("points of order 4 to 7 on Tate normal forms") {
  for (long t = 2; t < 12; ++t) {
    const struct {
      long n;
      WeierstrassModel e;
    } cases[] = {{4, tate_normal(t, 0)},
                 {5, tate_normal(t, t)},
                 {6, tate_normal(t + t * t, t)},
                 {7, tate_normal(t * t * t - t * t, t * t - t)}};
    for (const auto& [n, e] : cases) {
      if (discriminant(e) == 0) continue;
      const Curve<Rat> c = curve_over<Rat>(e);
      CHECK(order_of(c, RationalPoint::affine(0, 0)) == n);
      const TorsionGroup g = torsion_subgroup(e);
      CHECK(g.order() % n == 0);
      check_consistent(e, g);
    }
  }
}

TEST_CASE("known torsion structures") {
  const TorsionGroup full = torsion_subgroup(WeierstrassModel{0, 0, 0, -1, 0});
  CHECK(full.to_string() == "Z/2Z x Z/2Z");
  CHECK(full.two_primary() == std::pair<long, long>{2, 2});
  const TorsionGroup five = torsion_subgroup(WeierstrassModel{0, -1, 1, -10, -20});
  CHECK(five.to_string() == "Z/5Z");
  CHECK(five.two_primary() == std::pair<long, long>{1, 1});
  const TorsionGroup none = torsion_subgroup(WeierstrassModel{0, 0, 1, -1, 0});
  CHECK(none.to_string() == "0");
  const TorsionGroup e1 = torsion_subgroup(WeierstrassModel::from_ab(25350, 2471625));
  CHECK(e1.to_string() == "Z/2Z");
}

TEST_CASE("rational 2-torsion of (A, B)-forms") {
  oracle::Gen gen(42);
  for (int i = 0; i < 500; ++i) {
    const long A = gen.range(-60, 60), B = gen.nonzero(-400, 400);
    if (A * A == 4 * B) continue;
    const auto pts = two_torsion_points(WeierstrassModel::from_ab(A, B));
    long roots = 0;
    for (long x = -1000; x <= 1000; ++x)
      if (x * (x * x + A * x + B) == 0) ++roots;
    CHECK(static_cast<long>(pts.size()) == roots);
    CHECK(pts.front() == RationalPoint::affine(0, 0));
  }
}

TEST_CASE("integer roots of cubics") {
  CHECK(integer_roots_cubic(-6, 11, -6) == std::vector<Int>{1, 2, 3});
  CHECK(integer_roots_cubic(0, 0, 2).empty());
  CHECK(integer_roots_cubic(0, -1, 0) == std::vector<Int>{-1, 0, 1});
}

TEST_CASE("point counts agree with a direct count") {
  oracle::Gen gen(43);
  for (int i = 0; i < 100; ++i) {
    const WeierstrassModel e = gen.model(100);
    for (long p : {5L, 7L, 11L, 13L, 101L}) {
      if (discriminant(e) % p == 0) continue;
      CHECK(count_points_mod_p(e, p) == oracle::count_points(e, p));
    }
  }
}
