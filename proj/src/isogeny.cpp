// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/isogeny.hpp"

#include "bsdtwins/errors.hpp"
#include "bsdtwins/torsion.hpp"

namespace bsdtwins {

namespace {

AbCurve image_of(const AbCurve& e) { return {-2 * e.A, e.A * e.A - 4 * e.B}; }

bool rational_square(const Rat& q, Rat* root = nullptr) {
  if (q < 0) return false;
  Int n = q.get_num(), d = q.get_den();
  if (!is_square(n) || !is_square(d)) return false;
  if (root) *root = make_rat(sqrt(n), sqrt(d));
  return true;
}

}  // namespace

TwoIsogeny two_isogeny(const Int& A, const Int& B) {
  if (B == 0 || A * A - 4 * B == 0) {
    throw SingularModel("y^2 = x(x^2 + " + A.get_str() + "x + " + B.get_str() + ") is singular");
  }
  AbCurve dom{A, B};
  return {dom, image_of(dom), 1};
}

TwoIsogeny dual_isogeny(const TwoIsogeny& iso) {
  TwoIsogeny d{iso.codomain, iso.domain, 1};
  AbCurve natural = image_of(d.domain);
  if (natural == d.codomain) return d;
  if (natural.A == 4 * d.codomain.A && natural.B == 16 * d.codomain.B) {
    d.scale = 2;
    return d;
  }
  throw NotIsogenous("dual_isogeny: codomain does not match the domain of the input");
}

TwoIsogeny twist(const TwoIsogeny& iso, const Int& d) {
  if (iso.scale != 1) throw InvalidInput("twist expects an unscaled isogeny");
  return two_isogeny(iso.domain.A * d, iso.domain.B * d * d);
}

Int two_division_field(const AbCurve& e) {
  return squarefree_part(e.A * e.A - 4 * e.B);
}

bool is_balanced(const TwoIsogeny& iso) {
  return two_division_field(iso.domain) == two_division_field(iso.codomain);
}

bool ab_equivalent(const AbCurve& lhs, const AbCurve& rhs) {
  if (lhs.B == 0 || rhs.B == 0) return lhs == rhs;
  Rat u4 = make_rat(lhs.B, rhs.B);
  Rat u2;
  if (!rational_square(u4, &u2)) return false;
  if (!rational_square(u2)) return false;
  return Rat(lhs.A) == u2 * Rat(rhs.A);
}

std::vector<AbCurve> ab_forms(const WeierstrassModel& e) {
  const DerivedInvariants inv = derived_invariants(e);
  // Y^2 = X^3 + b2 X^2 + 8 b4 X + 16 b6 with X = 4x, Y = 8y + 4 a1 x + 4 a3.
  const Int a = inv.b2, b = 8 * inv.b4, c = 16 * inv.b6;
  std::vector<AbCurve> out;
  for (const Int& r : integer_roots_cubic(a, b, c)) {
    Int A = 3 * r + a;
    Int B = 3 * r * r + 2 * a * r + b;
    for (const auto& pe : factor(gcd(A * A, B)).factors) {
      const Int& p = pe.prime;
      Int p2 = p * p, p4 = p2 * p2;
      while (mod(A, p2) == 0 && mod(B, p4) == 0) {
        A /= p2;
        B /= p4;
      }
    }
    out.push_back({A, B});
  }
  return out;
}

}  // namespace bsdtwins
