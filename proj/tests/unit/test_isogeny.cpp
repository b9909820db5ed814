// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include "bsdtwins/errors.hpp"
#include "bsdtwins/isogeny.hpp"
#include "oracles.hpp"

using namespace bsdtwins;

TEST_CASE("dual after isogeny is multiplication by 2 on every curve over F_31") {
  using F = Fp<31>;
  long curves = 0, points = 0;
  for (long A = 0; A < 31; ++A) {
    for (long B = 0; B < 31; ++B) {
      if ((B * (A * A - 4 * B)) % 31 == 0) continue;
      const TwoIsogeny phi = two_isogeny(A, B);
      const TwoIsogeny phihat = dual_isogeny(phi);
      const Curve<F> src = curve_over<F>(phi.domain.model());
      const Curve<F> dst = curve_over<F>(phi.codomain.model());
      CHECK(phihat.codomain == phi.domain);
      std::vector<Point<F>> pts{Point<F>::at_infinity()};
      for (long x = 0; x < 31; ++x)
        for (long y = 0; y < 31; ++y)
          if (on_curve(src, Point<F>::affine(F(x), F(y)))) pts.push_back(Point<F>::affine(F(x), F(y)));
      long kernel = 0;
      for (const auto& p : pts) {
        const Point<F> q = phi(p);
        CHECK(on_curve(dst, q));
        CHECK(phihat(q) == point_double(src, p));
        if (q.infinity) ++kernel;
        ++points;
      }
      CHECK(kernel == 2);
      for (size_t i = 0; i < pts.size(); i += 4) {
        const auto& p = pts[i];
        const auto& q = pts[(3 * i + 1) % pts.size()];
        CHECK(phi(point_add(src, p, q)) == point_add(dst, phi(p), phi(q)));
      }
      ++curves;
    }
  }
  CHECK(curves > 800);
  CHECK(points > 20000);
}

TEST_CASE("isogeny of the base pair") {
  const TwoIsogeny phi = two_isogeny(25350, 2471625);
  CHECK(phi.codomain == AbCurve{-50700, 632736000});
  CHECK(is_balanced(phi));
  const TwoIsogeny t = twist(phi, 17);
  CHECK(t.domain == AbCurve{25350 * 17, Int(2471625) * 289});
  CHECK(t.codomain == AbCurve{-50700 * 17, Int(632736000) * 289});
}

TEST_CASE("two-division field and balance") {
  oracle::Gen gen(51);
  for (int i = 0; i < 500; ++i) {
    const long A = gen.range(-100, 100), B = gen.nonzero(-1000, 1000);
    const long d = A * A - 4 * B;
    if (d == 0) continue;
    const TwoIsogeny phi = two_isogeny(A, B);
    CHECK(two_division_field(phi.domain) == squarefree_part(Int(d)));
    // Q(E'[2]) = Q(sqrt(B)) because disc(x^2 - 2Ax + A^2 - 4B) = 16 B.
    CHECK(two_division_field(phi.codomain) == squarefree_part(Int(B)));
    CHECK(is_balanced(phi) == (squarefree_part(Int(B)) == squarefree_part(Int(d))));
  }
  CHECK_THROWS_AS(two_isogeny(2, 1), SingularModel);
  CHECK_THROWS_AS(two_isogeny(3, 0), SingularModel);
}

TEST_CASE("(A, B) equivalence under scaling") {
  oracle::Gen gen(52);
  for (int i = 0; i < 300; ++i) {
    const long A = gen.range(-50, 50), B = gen.nonzero(-500, 500);
    const long u = gen.nonzero(-7, 7);
    CHECK(ab_equivalent({A, B}, {A * u * u, B * u * u * u * u}));
    CHECK(ab_equivalent({A * u * u, B * u * u * u * u}, {A, B}));
    CHECK_FALSE(ab_equivalent({A, B}, {A + 1, B}));
  }
  CHECK_FALSE(ab_equivalent({1, 2}, {-1, 2}));
}

TEST_CASE("(A, B)-forms of general models") {
  const WeierstrassModel e1 = WeierstrassModel::from_ab(25350, 2471625);
  const auto forms = ab_forms(e1);
  REQUIRE(forms.size() == 1);
  CHECK(forms[0] == AbCurve{25350, 2471625});
  // y^2 = x^3 - x has three 2-torsion points.
  CHECK(ab_forms(WeierstrassModel{0, 0, 0, -1, 0}).size() == 3);
  // Shifted and scaled models give equivalent forms.
  const WeierstrassModel moved = change_coordinates(
      WeierstrassModel{e1.a1 * 2, e1.a2 * 4, e1.a3 * 8, e1.a4 * 16, e1.a6 * 64}, 1, 7, 1, 3);
  const auto again = ab_forms(moved);
  REQUIRE(again.size() == 1);
  CHECK(ab_equivalent(again[0], forms[0]));
  CHECK(ab_forms(WeierstrassModel{0, 0, 1, -1, 0}).empty());
}
