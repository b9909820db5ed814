// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <optional>
#include <vector>

#include "bsdtwins/model.hpp"

namespace bsdtwins {

/// Curve y^2 = x(x^2 + A x + B).
struct AbCurve {
  Int A, B;

  WeierstrassModel model() const { return WeierstrassModel::from_ab(A, B); }
  bool operator==(const AbCurve&) const = default;
};

/// Rational 2-isogeny with kernel {inf, (0,0)}
///   (x, y) -> (y^2/x^2, y (B - x^2)/x^2) / (scale^2, scale^3).
/// The unscaled image curve is (-2A, A^2 - 4B); `scale` = 2 identifies the
/// image (4A', 16B') of a dual map with the original domain (A', B').
struct TwoIsogeny {
  AbCurve domain;
  AbCurve codomain;
  long scale = 1;

  template <class F>
  Point<F> operator()(const Point<F>& p) const {
    if (p.infinity || p.x == F(0)) return Point<F>::at_infinity();
    F x2 = p.x * p.x;
    F X = p.y * p.y / x2;
    F Y = p.y * (F(domain.B) - x2) / x2;
    if (scale != 1) {
      F s(scale);
      X = X / (s * s);
      Y = Y / (s * s * s);
    }
    return Point<F>::affine(X, Y);
  }
};

/// Isogeny out of (A, B). Throws SingularModel when B (A^2 - 4B) = 0.
TwoIsogeny two_isogeny(const Int& A, const Int& B);

/// The dual map, landing literally on iso.domain.
TwoIsogeny dual_isogeny(const TwoIsogeny& iso);

/// The isogeny out of the quadratic twist (A D, B D^2).
TwoIsogeny twist(const TwoIsogeny& iso, const Int& d);

/// Squarefree s with Q(E[2]) = Q(sqrt(s)); 1 means full rational 2-torsion.
Int two_division_field(const AbCurve& e);

/// Q(E1[2]) = Q(E2[2]).
bool is_balanced(const TwoIsogeny& iso);

/// Whether (A1, B1) = (u^2 A2, u^4 B2) for some rational u.
bool ab_equivalent(const AbCurve& lhs, const AbCurve& rhs);

/// The (A, B)-forms of a model, one per rational 2-torsion point, with
/// (A, B) reduced so that no u > 1 has u^2 | A and u^4 | B.
std::vector<AbCurve> ab_forms(const WeierstrassModel& e);

}  // namespace bsdtwins
