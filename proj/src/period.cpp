// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/period.hpp"

#include <functional>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bsdtwins/errors.hpp"

namespace bsdtwins {

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

std::string RealPeriod::to_string(unsigned shown) const {
  return value.str(static_cast<std::streamsize>(shown));
}

Real agm(const Real& a0, const Real& b0) {
  if (a0 <= 0 || b0 <= 0) throw InvalidInput("agm needs positive arguments");
  Real a = a0, b = b0;
  const Real eps = boost::multiprecision::pow(Real(10), -static_cast<long>(Real::default_precision()));
  for (int i = 0; i < 200; ++i) {
    Real next_a = (a + b) / 2;
    Real next_b = boost::multiprecision::sqrt(a * b);
    a = next_a;
    b = next_b;
    if (boost::multiprecision::abs(a - b) <= eps * a) break;
  }
  return (a + b) / 2;
}

namespace {

Rat to_rat(const Real& x) {
  mpz_t m;
  mpz_init(m);
  mpfr_exp_t exp = mpfr_get_z_2exp(m, x.backend().data());
  Int mant(m);
  mpz_clear(m);
  Rat r(mant);
  if (exp >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(exp));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<unsigned long>(-exp));
  }
  return r;
}

Real to_real(const Rat& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

struct Cubic {
  Int c3, c2, c1, c0;
  int sign_at(const Rat& x) const { return sgn(((Rat(c3) * x + c2) * x + c1) * x + c0); }
};

// Root in [lo, hi] where the cubic changes sign, to absolute accuracy 2^-bits.
Rat bisect(const Cubic& f, Rat lo, Rat hi, unsigned long bits) {
  const int slo = f.sign_at(lo);
  if (slo == 0) return lo;
  if (f.sign_at(hi) == 0) return hi;
  Rat target = 1;
  mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), bits);
  while (hi - lo > target) {
    Rat mid = (lo + hi) / 2;
    const int s = f.sign_at(mid);
    if (s == 0) return mid;
    if (s == slo) lo = mid;
    else hi = mid;
  }
  return (lo + hi) / 2;
}

// Rational approximations of the real roots, descending. Root gaps are at
// least ~ 1/bound^2, so the extra bits keep `digits` correct in differences.
std::vector<Rat> cubic_roots(const WeierstrassModel& e, unsigned digits) {
  const DerivedInvariants inv = derived_invariants(e);
  const Cubic f{Int(4), inv.b2, 2 * inv.b4, inv.b6};
  const Int bound = 1 + (abs(f.c2) + abs(f.c1) + abs(f.c0));
  const unsigned long bits =
      static_cast<unsigned long>(digits * 3.33) + 3 * mpz_sizeinbase(bound.get_mpz_t(), 2) + 32;
  const Rat lo(-bound), hi(bound);
  if (inv.discriminant < 0) return {bisect(f, lo, hi, bits)};
  // Critical points (-b2 +- sqrt(b2^2 - 24 b4)) / 12 separate the three roots.
  const Int crit_disc = inv.b2 * inv.b2 - 24 * inv.b4;
  if (crit_disc <= 0) throw std::logic_error("positive discriminant without critical points");
  PrecisionScope scope(digits + 2 * mpz_sizeinbase(bound.get_mpz_t(), 10) + 10);
  const Real s = boost::multiprecision::sqrt(to_real(Rat(crit_disc)));
  const Rat c1 = to_rat((to_real(Rat(-inv.b2)) - s) / 12);
  const Rat c2 = to_rat((to_real(Rat(-inv.b2)) + s) / 12);
  if (f.sign_at(c1) <= 0 || f.sign_at(c2) >= 0) throw std::logic_error("cubic root isolation failed");
  return {bisect(f, c2, hi, bits), bisect(f, c1, c2, bits), bisect(f, lo, c1, bits)};
}

}  // namespace

std::vector<Real> two_torsion_abscissae(const WeierstrassModel& e, unsigned digits) {
  std::vector<Real> out;
  for (const Rat& r : cubic_roots(e, digits)) out.push_back(to_real(r));
  return out;
}

Rat minimal_model_scaling(const WeierstrassModel& e, const GlobalData& g) {
  const Int disc = discriminant(e);
  if (g.min_discriminant == 0 || disc % g.min_discriminant != 0) {
    throw std::logic_error("minimal discriminant does not divide the model discriminant");
  }
  const Int ratio = disc / g.min_discriminant;
  Int u;
  if (ratio <= 0 || !mpz_root(u.get_mpz_t(), ratio.get_mpz_t(), 12)) {
    throw std::logic_error("disc / disc_min is not a twelfth power");
  }
  return Rat(u);
}

Real real_period_quadrature(const WeierstrassModel& e, unsigned digits) {
  PrecisionScope scope(digits + 10);
  namespace mp = boost::multiprecision;
  const DerivedInvariants inv = derived_invariants(e);
  const std::vector<Rat> exact = cubic_roots(e, digits + 10);
  std::vector<Real> roots;
  for (const Rat& r : exact) roots.push_back(to_real(r));
  const Real b2 = to_real(Rat(inv.b2)), b4 = to_real(Rat(inv.b4));
  const Real half_pi = boost::math::constants::half_pi<Real>();
  const Real tol = mp::pow(Real(10), -static_cast<long>(digits));
  // The default endpoint cutoff is unusable for variable-precision MPFR.
  boost::math::quadrature::tanh_sinh<Real> quad(15, mp::pow(Real(10), -3 * static_cast<long>(digits)));

  // Bisect until the error estimate meets the tolerance.
  std::function<Real(const std::function<Real(const Real&)>&, const Real&, const Real&, int)> adaptive =
      [&](const std::function<Real(const Real&)>& f, const Real& a, const Real& b, int depth) -> Real {
    Real err = 0;
    const Real v = quad.integrate(f, a, b, tol, &err);
    if (err <= tol * mp::abs(v) || depth >= 24) return v;
    const Real m = (a + b) / 2;
    return adaptive(f, a, m, depth + 1) + adaptive(f, m, b, depth + 1);
  };

  // 4x^3 + b2 x^2 + 2 b4 x + b6 = (x - e1)(4x^2 + beta x + gamma). With
  // x = e1 + tan^2(phi) the unbounded branch becomes
  //   2 dphi / sqrt(cos^4 * g(e1 + tan^2)), smooth on [0, pi/2].
  const Real& e1 = roots.front();
  const Real beta = b2 + 4 * e1, gamma = 2 * b4 + beta * e1;
  const std::function<Real(const Real&)> unbounded = [&](const Real& phi) -> Real {
    const Real s = mp::sin(phi), c = mp::cos(phi);
    const Real w = e1 * c * c + s * s;
    const Real v = 4 * w * w + beta * w * c * c + gamma * c * c * c * c;
    return 2 / mp::sqrt(v);
  };
  // Complex roots near the real axis peak the integrand at their real part.
  const Real peak = -beta / 8;
  Real total = 0;
  if (peak > e1) {
    const Real phi0 = mp::atan(mp::sqrt(peak - e1));
    total = adaptive(unbounded, Real(0), phi0, 0) + adaptive(unbounded, phi0, half_pi, 0);
  } else {
    total = adaptive(unbounded, Real(0), half_pi, 0);
  }
  if (roots.size() == 3) {
    // Bounded branch: x = e3 + (e2 - e3) sin^2(theta) gives dtheta / sqrt(e1 - x).
    const Real& e2 = roots[1];
    const Real& e3 = roots[2];
    const std::function<Real(const Real&)> bounded = [&](const Real& theta) -> Real {
      const Real s = mp::sin(theta);
      return 1 / mp::sqrt(e1 - e3 - (e2 - e3) * s * s);
    };
    total += adaptive(bounded, Real(0), half_pi, 0);
  }
  // Each x contributes the two points +-y.
  return 2 * total;
}

RealPeriod real_period(const WeierstrassModel& e, const PeriodOptions& opts) {
  if (opts.digits < 10) throw InvalidInput("period precision below 10 digits");
  PrecisionScope scope(opts.digits + 10);
  const DerivedInvariants inv = derived_invariants(e);
  RealPeriod out;
  out.digits = opts.digits;
  out.u = minimal_model_scaling(e, global_data(e));
  if (inv.discriminant > 0) {
    namespace mp = boost::multiprecision;
    const auto r = cubic_roots(e, opts.digits + 10);
    const Real pi = boost::math::constants::pi<Real>();
    out.value = 2 * pi / agm(mp::sqrt(to_real(r[0] - r[2])), mp::sqrt(to_real(r[0] - r[1])));
  } else {
    if (!opts.quadrature_fallback) {
      throw NegativeDiscriminantUnsupported("disc < 0 needs the quadrature fallback");
    }
    out.value = real_period_quadrature(e, opts.digits);
    out.by_quadrature = true;
  }
  out.value *= to_real(out.u);
  return out;
}

std::string to_string(RankParity p) {
  switch (p) {
    case RankParity::Even: return "even";
    case RankParity::Odd: return "odd";
    case RankParity::Unknown: return "unknown";
  }
  return "?";
}

std::string to_string(PeriodVerdict v) {
  switch (v) {
    case PeriodVerdict::Equal: return "equal";
    case PeriodVerdict::NotEqual: return "not-equal";
    case PeriodVerdict::Unknown: return "unknown";
  }
  return "?";
}

PeriodComparison period_equality_check(const RealPeriod& p1, const RealPeriod& p2,
                                       const GlobalData& g1, const GlobalData& g2,
                                       RankParity parity) {
  PrecisionScope scope(std::min(p1.digits, p2.digits) + 10);
  PeriodComparison out;
  out.relative_difference = boost::multiprecision::abs(p1.value - p2.value) / p1.value;
  const Real tol = boost::multiprecision::pow(Real(10), -40);
  out.numerically_equal = out.relative_difference <= tol;

  bool same_tamagawa = g1.local.size() == g2.local.size();
  for (const auto& [p, ld] : g1.local) {
    auto it = g2.local.find(p);
    if (it == g2.local.end() || it->second.tamagawa != ld.tamagawa) same_tamagawa = false;
  }
  if (!same_tamagawa) {
    out.basis = "numeric only (Tamagawa numbers differ)";
    out.verdict = out.numerically_equal ? PeriodVerdict::Unknown : PeriodVerdict::NotEqual;
    return out;
  }
  if (parity == RankParity::Unknown) {
    out.basis = "numeric only (rank parity unknown)";
    out.verdict = out.numerically_equal ? PeriodVerdict::Unknown : PeriodVerdict::NotEqual;
    return out;
  }
  out.criterion_invoked = true;
  const bool predicted = parity == RankParity::Even;
  if (predicted != out.numerically_equal) {
    throw Inconsistent("period criterion predicts " + std::string(predicted ? "equal" : "different") +
                       " periods, numerics disagree");
  }
  out.basis = "Tamagawa criterion with " + to_string(parity) + " rank parity, numerics agree";
  out.verdict = predicted ? PeriodVerdict::Equal : PeriodVerdict::NotEqual;
  return out;
}

}  // namespace bsdtwins
