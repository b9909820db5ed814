// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/localdata.hpp"

#include <array>
#include <stdexcept>

#include "bsdtwins/errors.hpp"

namespace bsdtwins {

long KodairaSymbol::components() const {
  switch (kind) {
    case Kind::I0: return 1;
    case Kind::In: return n;
    case Kind::II: return 1;
    case Kind::III: return 2;
    case Kind::IV: return 3;
    case Kind::I0Star: return 5;
    case Kind::InStar: return n + 5;
    case Kind::IVStar: return 7;
    case Kind::IIIStar: return 8;
    case Kind::IIStar: return 9;
  }
  return 0;
}

std::string KodairaSymbol::to_string() const {
  switch (kind) {
    case Kind::I0: return "I0";
    case Kind::In: return "I" + std::to_string(n);
    case Kind::II: return "II";
    case Kind::III: return "III";
    case Kind::IV: return "IV";
    case Kind::I0Star: return "I0*";
    case Kind::InStar: return "I" + std::to_string(n) + "*";
    case Kind::IVStar: return "IV*";
    case Kind::IIIStar: return "III*";
    case Kind::IIStar: return "II*";
  }
  return "?";
}

std::string KodairaSymbol::to_latex() const {
  switch (kind) {
    case Kind::I0: return "I_0";
    case Kind::In: return "I_{" + std::to_string(n) + "}";
    case Kind::II: return "II";
    case Kind::III: return "III";
    case Kind::IV: return "IV";
    case Kind::I0Star: return "I_0^*";
    case Kind::InStar: return "I_{" + std::to_string(n) + "}^*";
    case Kind::IVStar: return "IV^*";
    case Kind::IIIStar: return "III^*";
    case Kind::IIStar: return "II^*";
  }
  return "?";
}

std::optional<KodairaSymbol> KodairaSymbol::parse(const std::string& s) {
  using K = Kind;
  if (s == "I0") return KodairaSymbol{K::I0, 0};
  if (s == "II") return KodairaSymbol{K::II, 0};
  if (s == "III") return KodairaSymbol{K::III, 0};
  if (s == "IV") return KodairaSymbol{K::IV, 0};
  if (s == "I0*") return KodairaSymbol{K::I0Star, 0};
  if (s == "IV*") return KodairaSymbol{K::IVStar, 0};
  if (s == "III*") return KodairaSymbol{K::IIIStar, 0};
  if (s == "II*") return KodairaSymbol{K::IIStar, 0};
  if (s.size() >= 2 && s[0] == 'I') {
    bool star = s.back() == '*';
    std::string digits = s.substr(1, s.size() - 1 - (star ? 1 : 0));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      return std::nullopt;
    }
    long n = std::stol(digits);
    if (n < 1) return std::nullopt;
    return KodairaSymbol{star ? K::InStar : K::In, n};
  }
  return std::nullopt;
}

std::string to_string(ReductionType r) {
  switch (r) {
    case ReductionType::Good: return "good";
    case ReductionType::SplitMultiplicative: return "split";
    case ReductionType::NonsplitMultiplicative: return "nonsplit";
    case ReductionType::Additive: return "additive";
  }
  return "?";
}

long GlobalData::tamagawa_product() const {
  long prod = 1;
  for (const auto& [p, ld] : local) prod *= ld.tamagawa;
  return prod;
}

bool ogg_check(const LocalData& ld) {
  return ld.min_disc_valuation == ld.conductor_exponent + ld.components - 1;
}

namespace {

bool divisible(const Int& x, const Int& m) { return mod(x, m) == 0; }

Int inverse_mod(const Int& a, const Int& m) {
  Int r, am = mod(a, m);
  if (mpz_invert(r.get_mpz_t(), am.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::logic_error("inverse_mod: not invertible");
  }
  return r;
}

// Whether a X^2 + b X + c has a root in F_p.
bool quadratic_has_root(const Int& a, const Int& b, const Int& c, const Int& p) {
  if (p == 2) {
    return mod(c, 2) == 0 || mod(a + b + c, 2) == 0;
  }
  if (divisible(a, p)) return !divisible(b, p) || divisible(c, p);
  return jacobi(b * b - 4 * a * c, p) != -1;
}

// Polynomials modulo a monic cubic over F_p, as coefficient triples.
using Quad = std::array<Int, 3>;

Quad mul_mod_cubic(const Quad& u, const Quad& v, const Int& b, const Int& c, const Int& d,
                   const Int& p) {
  std::array<Int, 5> prod;
  for (auto& x : prod) x = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) prod[i + j] += u[i] * v[j];
  // T^3 = -b T^2 - c T - d
  for (int k = 4; k >= 3; --k) {
    Int top = prod[k];
    prod[k] = 0;
    prod[k - 1] -= top * b;
    prod[k - 2] -= top * c;
    prod[k - 3] -= top * d;
  }
  return {mod(prod[0], p), mod(prod[1], p), mod(prod[2], p)};
}

int poly_degree(const std::vector<Int>& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// Degree of gcd(f, g) over F_p.
int gcd_degree(std::vector<Int> f, std::vector<Int> g, const Int& p) {
  while (poly_degree(g) >= 0) {
    int dg = poly_degree(g);
    Int lead_inv = inverse_mod(g[dg], p);
    while (poly_degree(f) >= dg) {
      int df = poly_degree(f);
      Int q = mod(f[df] * lead_inv, p);
      for (int i = 0; i <= dg; ++i) f[df - dg + i] = mod(f[df - dg + i] - q * g[i], p);
    }
    std::swap(f, g);
  }
  return poly_degree(f);
}

}  // namespace

int cubic_root_count_mod_p(const Int& b, const Int& c, const Int& d, const Int& p) {
  if (p < 64) {
    int count = 0;
    for (long x = 0; x < p.get_si(); ++x) {
      if (divisible(x * x * x + b * x * x + c * x + d, p)) ++count;
    }
    return count;
  }
  // Roots are the common roots with T^p - T.
  Quad result{Int(1), Int(0), Int(0)}, base{Int(0), Int(1), Int(0)};
  Int e = p;
  Int bb = mod(b, p), cc = mod(c, p), dd = mod(d, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mul_mod_cubic(result, base, bb, cc, dd, p);
    base = mul_mod_cubic(base, base, bb, cc, dd, p);
    e /= 2;
  }
  std::vector<Int> g{result[0], mod(result[1] - 1, p), result[2]};
  std::vector<Int> f{dd, cc, bb, Int(1)};
  int deg = gcd_degree(f, g, p);
  if (deg < 0) return 3;  // T^p - T vanishes mod f: f splits completely
  return deg;
}

namespace {

struct Invariants {
  Int b2, b4, b6, b8, c4, disc;
};

Invariants invariants_of(const WeierstrassModel& e) {
  Invariants v;
  v.b2 = e.a1 * e.a1 + 4 * e.a2;
  v.b4 = 2 * e.a4 + e.a1 * e.a3;
  v.b6 = e.a3 * e.a3 + 4 * e.a6;
  v.b8 = e.a1 * e.a1 * e.a6 + 4 * e.a2 * e.a6 - e.a1 * e.a3 * e.a4 + e.a2 * e.a3 * e.a3 -
         e.a4 * e.a4;
  v.c4 = v.b2 * v.b2 - 24 * v.b4;
  v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 +
           9 * v.b2 * v.b4 * v.b6;
  return v;
}

// Valuation capped so that zero counts as "large".
long val_or(const Int& x, const Int& p, long cap) {
  return x == 0 ? cap : std::min(valuation(x, p), cap);
}

LocalData make(const Int& p, KodairaSymbol k, long f, long c, long vdisc, ReductionType r) {
  LocalData ld;
  ld.p = p;
  ld.kodaira = k;
  ld.conductor_exponent = f;
  ld.tamagawa = c;
  ld.components = k.components();
  ld.min_disc_valuation = vdisc;
  ld.reduction = r;
  return ld;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("tate_algorithm invariant violated: ") + what);
}

}  // namespace

LocalData tate_algorithm(const WeierstrassModel& model, const Int& p) {
  using K = KodairaSymbol::Kind;
  if (!is_prime(p)) throw InvalidInput("tate_algorithm: " + p.get_str() + " is not prime");
  WeierstrassModel e = model;
  const Int p2 = p * p, p3 = p2 * p;
  for (;;) {
    Invariants iv = invariants_of(e);
    if (iv.disc == 0) throw SingularModel("singular model " + e.to_string());
    const long n = valuation(iv.disc, p);
    if (n == 0) return make(p, {K::I0, 0}, 0, 1, 0, ReductionType::Good);

    // Move the singular point of the reduction to (0, 0).
    Int r, t;
    if (p == 2 || p == 3) {
      bool found = false;
      for (long x = 0; x < p && !found; ++x) {
        for (long y = 0; y < p && !found; ++y) {
          Int f = y * y + e.a1 * x * y + e.a3 * y - x * x * x - e.a2 * x * x - e.a4 * x - e.a6;
          Int fx = e.a1 * y - 3 * x * x - 2 * e.a2 * x - e.a4;
          Int fy = 2 * y + e.a1 * x + e.a3;
          if (divisible(f, p) && divisible(fx, p) && divisible(fy, p)) {
            r = x;
            t = y;
            found = true;
          }
        }
      }
      require(found, "no singular point mod p");
    } else if (divisible(iv.c4, p)) {
      r = mod(-iv.b2 * inverse_mod(12, p), p);
      t = mod(-(e.a1 * r + e.a3) * inverse_mod(2, p), p);
    } else {
      Int c6 = -iv.b2 * iv.b2 * iv.b2 + 36 * iv.b2 * iv.b4 - 216 * iv.b6;
      r = mod(-(c6 + iv.b2 * iv.c4) * inverse_mod(12 * iv.c4, p), p);
      t = mod(-(e.a1 * r + e.a3) * inverse_mod(2, p), p);
    }
    e = change_coordinates(e, 1, r, 0, t);
    require(divisible(e.a3, p) && divisible(e.a4, p) && divisible(e.a6, p),
            "singular point not at origin");
    iv = invariants_of(e);

    if (!divisible(iv.c4, p)) {
      bool split = quadratic_has_root(1, e.a1, -e.a2, p);
      long c = split ? n : (n % 2 == 0 ? 2 : 1);
      return make(p, {K::In, n}, 1, c, n,
                  split ? ReductionType::SplitMultiplicative
                        : ReductionType::NonsplitMultiplicative);
    }
    const auto additive = ReductionType::Additive;
    if (val_or(e.a6, p, 2) < 2) return make(p, {K::II, 0}, n, 1, n, additive);
    if (val_or(iv.b8, p, 3) < 3) return make(p, {K::III, 0}, n - 1, 2, n, additive);
    if (val_or(iv.b6, p, 3) < 3) {
      long c = quadratic_has_root(1, e.a3 / p, -(e.a6 / p2), p) ? 3 : 1;
      return make(p, {K::IV, 0}, n - 2, c, n, additive);
    }

    // Arrange p | a1, a2; p^2 | a3, a4; p^3 | a6.
    Int s;
    if (p == 2) {
      s = mod(e.a2, 2);
      t = 2 * mod(e.a6 / 4, 2);
    } else {
      Int half = inverse_mod(2, p);
      s = mod(-e.a1 * half, p);
      t = mod(-e.a3 * inverse_mod(2, p2), p2);
    }
    e = change_coordinates(e, 1, 0, s, t);
    require(divisible(e.a1, p) && divisible(e.a2, p) && divisible(e.a3, p2) &&
                divisible(e.a4, p2) && divisible(e.a6, p3),
            "could not reach the I0* normal form");

    // P(T) = T^3 + b T^2 + c T + d.
    const Int b = e.a2 / p, c = e.a4 / p2, d = e.a6 / p3;
    const Int w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    const Int x = 3 * c - b * b;
    if (!divisible(w, p)) {
      long cp = 1 + cubic_root_count_mod_p(b, c, d, p);
      return make(p, {K::I0Star, 0}, n - 4, cp, n, additive);
    }
    if (!divisible(x, p)) {
      // Double root: move it to T = 0.
      Int alpha;
      if (p == 2 || p == 3) {
        for (long a = 0; a < p; ++a) {
          Int val = a * a * a + b * a * a + c * a + d;
          Int der = 3 * a * a + 2 * b * a + c;
          if (divisible(val, p) && divisible(der, p)) alpha = a;
        }
      } else {
        alpha = mod((b * c - 9 * d) * inverse_mod(2 * x, p), p);
      }
      e = change_coordinates(e, 1, p * alpha, 0, 0);
      long ix = 3, iy = 3;
      Int mx = p2, my = p2;
      long cp = 0;
      while (cp == 0) {
        Int xa2 = e.a2 / p, xa3 = e.a3 / my, xa4 = e.a4 / (p * mx), xa6 = e.a6 / (mx * my);
        if (!divisible(xa3 * xa3 + 4 * xa6, p)) {
          cp = quadratic_has_root(1, xa3, -xa6, p) ? 4 : 2;
          break;
        }
        Int tt = my * (p == 2 ? mod(xa6, 2) : mod(-xa3 * inverse_mod(2, p), p));
        e = change_coordinates(e, 1, 0, 0, tt);
        my *= p;
        ++iy;
        xa2 = e.a2 / p;
        xa3 = e.a3 / my;
        xa4 = e.a4 / (p * mx);
        xa6 = e.a6 / (mx * my);
        if (!divisible(xa4 * xa4 - 4 * xa2 * xa6, p)) {
          cp = quadratic_has_root(xa2, xa4, xa6, p) ? 4 : 2;
          break;
        }
        Int rr = mx * (p == 2 ? mod(xa6 * xa2, 2) : mod(-xa4 * inverse_mod(2 * xa2, p), p));
        e = change_coordinates(e, 1, rr, 0, 0);
        mx *= p;
        ++ix;
      }
      long m = ix + iy - 5;
      return make(p, {K::InStar, m}, n - m - 4, cp, n, additive);
    }
    // Triple root: move it to T = 0.
    Int alpha = p == 3 ? mod(-d, 3) : mod(-b * inverse_mod(3, p), p);
    e = change_coordinates(e, 1, p * alpha, 0, 0);
    const Int p4 = p2 * p2;
    Int x3 = e.a3 / p2, x6 = e.a6 / p4;
    if (!divisible(x3 * x3 + 4 * x6, p)) {
      long cp = quadratic_has_root(1, x3, -x6, p) ? 3 : 1;
      return make(p, {K::IVStar, 0}, n - 6, cp, n, additive);
    }
    Int tt = p2 * (p == 2 ? mod(x6, 2) : mod(-x3 * inverse_mod(2, p), p));
    e = change_coordinates(e, 1, 0, 0, tt);
    if (val_or(e.a4, p, 4) < 4) return make(p, {K::IIIStar, 0}, n - 7, 2, n, additive);
    if (val_or(e.a6, p, 6) < 6) return make(p, {K::IIStar, 0}, n - 8, 1, n, additive);
    // Not minimal at p: scale by u = p and start over.
    e = change_coordinates(e, p, 0, 0, 0);
  }
}

GlobalData global_data(const WeierstrassModel& e, const FactorBudget& budget) {
  const Int disc = discriminant(e);
  if (disc == 0) throw SingularModel("singular model " + e.to_string());
  GlobalData g;
  g.conductor = 1;
  Int abs_min = 1;
  for (const auto& pe : factor(disc, budget).factors) {
    LocalData ld = tate_algorithm(e, pe.prime);
    g.conductor *= ipow(pe.prime, static_cast<unsigned long>(ld.conductor_exponent));
    abs_min *= ipow(pe.prime, static_cast<unsigned long>(ld.min_disc_valuation));
    if (ld.reduction != ReductionType::Good) g.local.emplace(pe.prime, ld);
  }
  g.min_discriminant = disc < 0 ? Int(-abs_min) : abs_min;
  return g;
}

}  // namespace bsdtwins
