// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/model.hpp"

#include <sstream>

#include "bsdtwins/errors.hpp"

namespace bsdtwins {

WeierstrassModel WeierstrassModel::from_ab(const Int& A, const Int& B) {
  return {0, A, 0, B, 0};
}

WeierstrassModel WeierstrassModel::from_ainvs(const std::array<Int, 5>& a) {
  return {a[0], a[1], a[2], a[3], a[4]};
}

std::string WeierstrassModel::to_string() const {
  std::ostringstream os;
  os << "[" << a1.get_str() << "," << a2.get_str() << "," << a3.get_str() << ","
     << a4.get_str() << "," << a6.get_str() << "]";
  return os.str();
}

namespace {

DerivedInvariants compute(const WeierstrassModel& e) {
  DerivedInvariants d;
  d.b2 = e.a1 * e.a1 + 4 * e.a2;
  d.b4 = 2 * e.a4 + e.a1 * e.a3;
  d.b6 = e.a3 * e.a3 + 4 * e.a6;
  d.b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 +
         e.a2 * e.a3 * e.a3 - e.a4 * e.a4;
  d.c4 = d.b2 * d.b2 - 24 * d.b4;
  d.c6 = -d.b2 * d.b2 * d.b2 + 36 * d.b2 * d.b4 - 216 * d.b6;
  d.discriminant = -d.b2 * d.b2 * d.b8 - 8 * d.b4 * d.b4 * d.b4 -
                   27 * d.b6 * d.b6 + 9 * d.b2 * d.b4 * d.b6;
  return d;
}

}  // namespace

Int discriminant(const WeierstrassModel& e) { return compute(e).discriminant; }

DerivedInvariants derived_invariants(const WeierstrassModel& e) {
  DerivedInvariants d = compute(e);
  if (d.discriminant == 0) throw SingularModel("singular model " + e.to_string());
  d.j = make_rat(d.c4 * d.c4 * d.c4, d.discriminant);
  return d;
}

WeierstrassModel quadratic_twist(const WeierstrassModel& e, const Int& d) {
  if (!e.is_short_form()) {
    throw NotShortForm("twisting requires a1 = a3 = 0, got " + e.to_string());
  }
  if (d == 0 || !is_squarefree(d)) {
    throw NotSquarefree("twist parameter " + d.get_str() + " is not squarefree");
  }
  return {0, e.a2 * d, 0, e.a4 * d * d, e.a6 * d * d * d};
}

WeierstrassModel change_coordinates(const WeierstrassModel& e, const Int& u,
                                    const Int& r, const Int& s, const Int& t) {
  if (u == 0) throw InvalidInput("change_coordinates: u = 0");
  Int a1 = e.a1 + 2 * s;
  Int a2 = e.a2 - s * e.a1 + 3 * r - s * s;
  Int a3 = e.a3 + r * e.a1 + 2 * t;
  Int a4 = e.a4 - s * e.a3 + 2 * r * e.a2 - (t + r * s) * e.a1 + 3 * r * r - 2 * s * t;
  Int a6 = e.a6 + r * e.a4 + r * r * e.a2 + r * r * r - t * e.a3 - t * t - r * t * e.a1;
  std::array<Int, 5> raw{a1, a2, a3, a4, a6};
  const unsigned long weights[5] = {1, 2, 3, 4, 6};
  std::array<Int, 5> out;
  for (int i = 0; i < 5; ++i) {
    Int scale = ipow(u, weights[i]);
    if (mod(raw[i], abs(scale)) != 0) {
      throw InvalidInput("coordinate change does not give an integral model");
    }
    out[i] = raw[i] / scale;
  }
  return WeierstrassModel::from_ainvs(out);
}

std::ostream& operator<<(std::ostream& os, const RationalPoint& p) {
  if (p.infinity) return os << "inf";
  return os << "(" << p.x.get_str() << "," << p.y.get_str() << ")";
}

}  // namespace bsdtwins
