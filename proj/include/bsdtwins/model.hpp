// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>

#include "bsdtwins/arith.hpp"

namespace bsdtwins {

/// Integral long Weierstrass model
///   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct WeierstrassModel {
  Int a1, a2, a3, a4, a6;

  /// y^2 = x(x^2 + A x + B).
  static WeierstrassModel from_ab(const Int& A, const Int& B);
  static WeierstrassModel from_ainvs(const std::array<Int, 5>& a);

  std::array<Int, 5> ainvs() const { return {a1, a2, a3, a4, a6}; }
  bool is_ab_form() const { return a1 == 0 && a3 == 0 && a6 == 0; }
  bool is_short_form() const { return a1 == 0 && a3 == 0; }
  std::string to_string() const;  // "[a1,a2,a3,a4,a6]"

  bool operator==(const WeierstrassModel&) const = default;
};

struct DerivedInvariants {
  Int b2, b4, b6, b8;
  Int c4, c6;
  Int discriminant;
  Rat j;
};

/// Standard b/c invariants, discriminant and j. Throws SingularModel if the
/// discriminant vanishes.
DerivedInvariants derived_invariants(const WeierstrassModel& e);

/// Discriminant only; zero for singular models.
Int discriminant(const WeierstrassModel& e);

/// Twist (a2, a4, a6) -> (a2 D, a4 D^2, a6 D^3) of a model with a1 = a3 = 0.
WeierstrassModel quadratic_twist(const WeierstrassModel& e, const Int& d);

/// Substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t. The result must be
/// integral; InvalidInput otherwise.
WeierstrassModel change_coordinates(const WeierstrassModel& e, const Int& u,
                                    const Int& r, const Int& s, const Int& t);

/// Prime field F_P with a compile-time modulus, for exhaustive checks.
template <std::uint32_t P>
class Fp {
 public:
  Fp() = default;
  Fp(long long v) : v_(static_cast<std::uint32_t>(((v % static_cast<long long>(P)) + P) % P)) {}
  explicit Fp(const Int& v) : v_(static_cast<std::uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), P))) {}

  static constexpr std::uint32_t modulus() { return P; }
  std::uint32_t value() const { return v_; }

  friend Fp operator+(Fp a, Fp b) { return Fp(static_cast<long long>(a.v_) + b.v_); }
  friend Fp operator-(Fp a, Fp b) { return Fp(static_cast<long long>(a.v_) - b.v_); }
  friend Fp operator*(Fp a, Fp b) {
    return Fp(static_cast<long long>(static_cast<std::uint64_t>(a.v_) * b.v_ % P));
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return Fp(-static_cast<long long>(v_)); }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_; }

  Fp inverse() const {
    // Fermat; v_ != 0 is the caller's responsibility.
    Fp r(1), b = *this;
    for (std::uint32_t e = P - 2; e; e >>= 1) {
      if (e & 1) r = r * b;
      b = b * b;
    }
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

 private:
  std::uint32_t v_ = 0;
};

/// A Weierstrass curve with coefficients in the field F (Rat or Fp<P>).
template <class F>
struct Curve {
  F a1, a2, a3, a4, a6;
};

template <class F>
Curve<F> curve_over(const WeierstrassModel& e) {
  return {F(e.a1), F(e.a2), F(e.a3), F(e.a4), F(e.a6)};
}

/// Affine point or the point at infinity.
template <class F>
struct Point {
  F x{}, y{};
  bool infinity = true;

  static Point at_infinity() { return {}; }
  static Point affine(F x, F y) { return {std::move(x), std::move(y), false}; }

  friend bool operator==(const Point& p, const Point& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
};

using RationalPoint = Point<Rat>;

template <class F>
bool on_curve(const Curve<F>& c, const Point<F>& p) {
  if (p.infinity) return true;
  F lhs = p.y * p.y + c.a1 * p.x * p.y + c.a3 * p.y;
  F rhs = p.x * p.x * p.x + c.a2 * p.x * p.x + c.a4 * p.x + c.a6;
  return lhs == rhs;
}

template <class F>
Point<F> point_negate(const Curve<F>& c, const Point<F>& p) {
  if (p.infinity) return p;
  F y = -p.y - c.a1 * p.x - c.a3;
  return Point<F>::affine(p.x, y);
}

template <class F>
Point<F> point_add(const Curve<F>& c, const Point<F>& p, const Point<F>& q) {
  if (p.infinity) return q;
  if (q.infinity) return p;
  F lambda, nu;
  if (p.x == q.x) {
    F ysum = p.y + q.y + c.a1 * q.x + c.a3;
    if (ysum == F(0)) return Point<F>::at_infinity();
    F num = F(3) * p.x * p.x + F(2) * c.a2 * p.x + c.a4 - c.a1 * p.y;
    F den = F(2) * p.y + c.a1 * p.x + c.a3;
    lambda = num / den;
    F nnum = -p.x * p.x * p.x + c.a4 * p.x + F(2) * c.a6 - c.a3 * p.y;
    nu = nnum / den;
  } else {
    F dx = q.x - p.x;
    lambda = (q.y - p.y) / dx;
    nu = (p.y * q.x - q.y * p.x) / dx;
  }
  F x3 = lambda * lambda + c.a1 * lambda - c.a2 - p.x - q.x;
  F y3 = -(lambda + c.a1) * x3 - nu - c.a3;
  return Point<F>::affine(x3, y3);
}

template <class F>
Point<F> point_double(const Curve<F>& c, const Point<F>& p) {
  return point_add(c, p, p);
}

template <class F>
Point<F> point_multiply(const Curve<F>& c, Point<F> p, long long n) {
  if (n < 0) {
    p = point_negate(c, p);
    n = -n;
  }
  Point<F> acc = Point<F>::at_infinity();
  while (n) {
    if (n & 1) acc = point_add(c, acc, p);
    p = point_double(c, p);
    n >>= 1;
  }
  return acc;
}

std::ostream& operator<<(std::ostream& os, const RationalPoint& p);

}  // namespace bsdtwins
