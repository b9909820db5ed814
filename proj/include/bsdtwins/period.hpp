// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <string>

#include "bsdtwins/localdata.hpp"
#include "bsdtwins/model.hpp"

namespace bsdtwins {

using Real = boost::multiprecision::mpfr_float;

/// Sets the default Real precision for the current thread while alive.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

struct RealPeriod {
  Real value;
  Rat u = 1;             // value = raw period of the given model * u
  unsigned digits = 60;  // working precision
  bool by_quadrature = false;

  std::string to_string(unsigned shown = 12) const;
};

struct PeriodOptions {
  unsigned digits = 60;
  bool quadrature_fallback = true;  // needed for disc < 0
};

/// Arithmetic-geometric mean of a, b > 0.
Real agm(const Real& a, const Real& b);

/// Real roots of 4x^3 + b2 x^2 + 2 b4 x + b6, descending. The roots are
/// isolated by exact rational sign evaluation.
std::vector<Real> two_torsion_abscissae(const WeierstrassModel& e, unsigned digits);

/// Omega = integral of |dx / (2y + a1 x + a3)| over E(R), for the minimal
/// model. Throws NegativeDiscriminantUnsupported when disc < 0 and the
/// quadrature fallback is off.
RealPeriod real_period(const WeierstrassModel& e, const PeriodOptions& opts = {});

/// Same quantity by direct tanh-sinh/exp-sinh quadrature, for the given
/// model (no minimal-model scaling).
Real real_period_quadrature(const WeierstrassModel& e, unsigned digits);

/// prod p^((v_p(disc) - v_p(disc_min)) / 12).
Rat minimal_model_scaling(const WeierstrassModel& e, const GlobalData& g);

enum class RankParity { Even, Odd, Unknown };
enum class PeriodVerdict { Equal, NotEqual, Unknown };
std::string to_string(RankParity p);
std::string to_string(PeriodVerdict v);

struct PeriodComparison {
  PeriodVerdict verdict = PeriodVerdict::Unknown;
  bool criterion_invoked = false;
  bool numerically_equal = false;
  Real relative_difference;
  std::string basis;
};

/// Equal Tamagawa data at every prime plus even analytic-rank parity give
/// equal periods; the numbers must agree to 1e-40 relative.
PeriodComparison period_equality_check(const RealPeriod& p1, const RealPeriod& p2,
                                       const GlobalData& g1, const GlobalData& g2,
                                       RankParity parity);

}  // namespace bsdtwins
