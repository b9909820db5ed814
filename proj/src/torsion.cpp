// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bsdtwins/errors.hpp"

namespace bsdtwins {

bool TorsionGroup::in_mazur_list() const {
  if (n1 == 1) return (n2 >= 1 && n2 <= 10) || n2 == 12;
  if (n1 == 2) return n2 == 2 || n2 == 4 || n2 == 6 || n2 == 8;
  return false;
}

std::pair<long, long> TorsionGroup::two_primary() const {
  auto two_part = [](long n) {
    long r = 1;
    while (n % 2 == 0) {
      n /= 2;
      r *= 2;
    }
    return r;
  };
  return {two_part(n1), two_part(n2)};
}

std::string TorsionGroup::to_string() const {
  if (order() == 1) return "0";
  std::string cyc = "Z/" + std::to_string(n2) + "Z";
  if (n1 == 1) return cyc;
  return "Z/" + std::to_string(n1) + "Z x " + cyc;
}

std::string to_string(RankProvenance p) {
  switch (p) {
    case RankProvenance::ProvenByDescent: return "proven-by-descent";
    case RankProvenance::Assumed: return "assumed";
    case RankProvenance::External: return "external";
    case RankProvenance::Unknown: return "unknown";
  }
  return "?";
}

std::string MordellWeilGroup::to_string() const {
  std::string tors = torsion.to_string();
  if (provenance == RankProvenance::Unknown) return "Z^? x " + tors;
  if (rank == 0) return tors;
  std::string free = "Z^" + std::to_string(rank);
  return torsion.order() == 1 ? free : free + " x " + tors;
}

long count_points_mod_p(const WeierstrassModel& e, long p) {
  DerivedInvariants inv = derived_invariants(e);
  const Int P = p;
  const long b2 = mod(inv.b2, P).get_si(), b4 = mod(inv.b4, P).get_si(),
             b6 = mod(inv.b6, P).get_si();
  std::vector<char> is_sq(p, 0);
  for (long y = 1; y < p; ++y) is_sq[y * y % p] = 1;
  long count = 1;
  for (long x = 0; x < p; ++x) {
    long v = ((4 * x % p * x % p * x) + b2 * x % p * x + 2 * b4 * x + b6) % p;
    if (v == 0) count += 1;
    else if (is_sq[v]) count += 2;
  }
  return count;
}

std::vector<Int> integer_roots_cubic(const Int& a, const Int& b, const Int& c) {
  auto g = [&](const Int& x) -> Int { return ((x + a) * x + b) * x + c; };
  const Int bound = 1 + std::max({Int(abs(a)), Int(abs(b)), Int(abs(c))});
  std::set<Int> roots;
  auto scan = [&](Int lo, Int hi) {
    lo = std::max(lo, Int(-bound));
    hi = std::min(hi, bound);
    for (Int x = lo; x <= hi; ++x)
      if (g(x) == 0) roots.insert(x);
  };
  // Binary search on an interval where g is monotone (sign = +1 increasing).
  auto bisect = [&](Int lo, Int hi, int sign) {
    lo = std::max(lo, Int(-bound));
    hi = std::min(hi, bound);
    if (lo > hi) return;
    if (sign * sgn(g(lo)) > 0 || sign * sgn(g(hi)) < 0) return;
    while (lo < hi) {
      Int mid;
      Int sum = lo + hi;
      mpz_fdiv_q_2exp(mid.get_mpz_t(), sum.get_mpz_t(), 1);
      if (sign * sgn(g(mid)) < 0) lo = mid + 1;
      else hi = mid;
    }
    if (g(lo) == 0) roots.insert(lo);
  };
  const Int disc = a * a - 3 * b;
  if (disc <= 0) {
    bisect(-bound, bound, 1);
  } else {
    Int s = sqrt(disc);
    auto fdiv3 = [](const Int& n) {
      Int q;
      mpz_fdiv_q_ui(q.get_mpz_t(), n.get_mpz_t(), 3);
      return q;
    };
    auto cdiv3 = [](const Int& n) {
      Int q;
      mpz_cdiv_q_ui(q.get_mpz_t(), n.get_mpz_t(), 3);
      return q;
    };
    // Critical points c1 < c2 of g lie in (k1, k2) and (k3, k4).
    Int k1 = fdiv3(-a - s - 1) - 1, k2 = cdiv3(-a - s) + 1;
    Int k3 = fdiv3(-a + s) - 1, k4 = cdiv3(-a + s + 1) + 1;
    scan(k1, k2);
    scan(k3, k4);
    bisect(-bound, k1, 1);
    if (k2 <= k3) bisect(k2, k3, -1);
    bisect(k4, bound, 1);
  }
  return {roots.begin(), roots.end()};
}

std::vector<RationalPoint> two_torsion_points(const WeierstrassModel& e) {
  if (!e.is_ab_form()) throw InvalidInput("two_torsion_points needs y^2 = x(x^2+Ax+B)");
  std::vector<RationalPoint> pts{RationalPoint::affine(Rat(0), Rat(0))};
  Int disc = e.a2 * e.a2 - 4 * e.a4;
  if (is_square(disc)) {
    Int s = sqrt(disc);
    for (Int root : {Int((-e.a2 - s) / 2), Int((-e.a2 + s) / 2)}) {
      pts.push_back(RationalPoint::affine(Rat(root), Rat(0)));
    }
  }
  return pts;
}

namespace {

// Order of a point of finite order at most 12, or 0 for non-torsion.
long torsion_order(const Curve<Rat>& c, const RationalPoint& p) {
  RationalPoint q = p;
  for (long n = 1; n <= 12; ++n) {
    if (q.infinity) return n;
    q = point_add(c, q, p);
  }
  return 0;
}

std::vector<Int> square_divisors(const Int& n) {
  std::vector<Int> out{Int(1)};
  for (const auto& pe : factor(n).factors) {
    std::vector<Int> next;
    for (const Int& d : out) {
      Int pk = 1;
      for (unsigned long k = 0; k <= pe.exponent / 2; ++k) {
        next.push_back(d * pk);
        pk *= pe.prime;
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

TorsionGroup torsion_subgroup(const WeierstrassModel& e) {
  const DerivedInvariants inv = derived_invariants(e);
  // Monic integral model Y^2 = X^3 + a X^2 + b X + c.
  const bool short_form = e.is_short_form();
  const Int a = short_form ? e.a2 : inv.b2;
  const Int b = short_form ? e.a4 : 8 * inv.b4;
  const Int c = short_form ? e.a6 : 16 * inv.b6;
  const Curve<Rat> aux{Rat(0), Rat(a), Rat(0), Rat(b), Rat(c)};
  const Curve<Rat> orig = curve_over<Rat>(e);
  auto to_original = [&](const Rat& X, const Rat& Y) {
    if (short_form) return RationalPoint::affine(X, Y);
    Rat x = X / 4;
    Rat y = (Y / 4 - Rat(e.a1) * x - Rat(e.a3)) / 2;
    return RationalPoint::affine(x, y);
  };

  long bound = 0;
  int used = 0;
  for (long p = 3; p < 2000 && used < 12; p += 2) {
    if (!is_prime(Int(p)) || mod(inv.discriminant, Int(p)) == 0) continue;
    bound = std::gcd(bound, count_points_mod_p(e, p));
    ++used;
  }

  std::vector<RationalPoint> found;
  for (const Int& x : integer_roots_cubic(a, b, c)) found.push_back(to_original(Rat(x), Rat(0)));

  if (bound != static_cast<long>(found.size()) + 1) {
    const Int disc_f = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
    for (const Int& y : square_divisors(abs(disc_f))) {
      for (const Int& x : integer_roots_cubic(a, b, c - y * y)) {
        for (int sign : {1, -1}) {
          RationalPoint p = RationalPoint::affine(Rat(x), Rat(sign * y));
          long ord = torsion_order(aux, p);
          if (ord > 0 && bound % ord == 0) found.push_back(to_original(p.x, p.y));
        }
      }
    }
  }

  TorsionGroup g;
  g.points = found;
  std::sort(g.points.begin(), g.points.end(), [](const RationalPoint& l, const RationalPoint& r) {
    return l.x != r.x ? l.x < r.x : l.y < r.y;
  });
  const long total = static_cast<long>(found.size()) + 1;
  long two_torsion = 0;
  const RationalPoint* max_point = nullptr;
  long max_order = 1;
  for (const auto& p : g.points) {
    long ord = torsion_order(orig, p);
    if (ord == 0 || !on_curve(orig, p)) throw std::logic_error("torsion point failed verification");
    if (ord == 2) ++two_torsion;
    if (ord > max_order) {
      max_order = ord;
      max_point = &p;
    }
  }
  if (two_torsion == 3) {
    g.n1 = 2;
    g.n2 = total / 2;
  } else {
    g.n1 = 1;
    g.n2 = total;
  }
  if (max_point) g.generators.push_back(*max_point);
  if (g.n1 == 2) {
    RationalPoint half = point_multiply(orig, *max_point, max_order / 2);
    for (const auto& p : g.points) {
      if (torsion_order(orig, p) == 2 && !(p == half)) {
        g.generators.push_back(p);
        break;
      }
    }
  }
  if (max_order != g.n2 || !g.in_mazur_list()) {
    throw std::logic_error("torsion structure outside Mazur's list: " + g.to_string());
  }
  return g;
}

}  // namespace bsdtwins
