// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/twinsearch.hpp"

#include <algorithm>
#include <thread>

#include "bsdtwins/descent.hpp"
#include "bsdtwins/errors.hpp"
#include "bsdtwins/torsion.hpp"

namespace bsdtwins {

bool ResidueRule::accepts(const Int& D) const {
  if (kind == Kind::Jacobi) return jacobi(D, modulus) == symbol;
  const Int r = mod(D, modulus);
  return std::find(allowed.begin(), allowed.end(), r) != allowed.end();
}

std::string ResidueRule::to_string() const {
  if (kind == Kind::Jacobi) {
    return "(D/" + modulus.get_str() + ") = " + std::to_string(symbol);
  }
  std::string classes;
  for (const Int& r : allowed) classes += (classes.empty() ? "" : ",") + r.get_str();
  return "D = " + classes + " mod " + modulus.get_str();
}

bool TwistCondition::accepts(const Int& D) const {
  if (sign != 0 && sgn(D) != sign) return false;
  if (D == 0 || gcd(D, coprime_to) != 1) return false;
  for (const auto& r : rules)
    if (!r.accepts(D)) return false;
  if (prime) return is_prime(abs(D));
  return !squarefree || is_squarefree(D);
}

std::vector<TwistCondition::Diagnostic> TwistCondition::diagnose(const Int& D) const {
  std::vector<Diagnostic> out;
  if (sign > 0) out.push_back({"D > 0", D > 0});
  if (sign < 0) out.push_back({"D < 0", D < 0});
  out.push_back({"gcd(D, " + coprime_to.get_str() + ") = 1", D != 0 && gcd(D, coprime_to) == 1});
  for (const auto& r : rules) out.push_back({r.to_string(), D != 0 && r.accepts(D)});
  if (prime) out.push_back({"D prime", is_prime(abs(D))});
  else if (squarefree) out.push_back({"D squarefree", D != 0 && is_squarefree(D)});
  return out;
}

std::string TwistCondition::to_string() const {
  std::string s = prime ? "D prime" : (squarefree ? "D squarefree" : "D");
  if (sign > 0) s += ", D > 0";
  if (sign < 0) s += ", D < 0";
  for (const auto& r : rules) s += ", " + r.to_string();
  if (coprime_to != 1) s += ", gcd(D, " + coprime_to.get_str() + ") = 1";
  return s;
}

TwistCondition base_pair_condition() {
  using K = ResidueRule::Kind;
  TwistCondition c;
  c.rules = {
      {K::Residues, Int(8), {Int(1)}, 1},
      {K::Jacobi, Int(3), {}, -1},
      {K::Jacobi, Int(5), {}, -1},
      {K::Jacobi, Int(13), {}, 1},
  };
  c.coprime_to = 2 * 3 * 5 * 13;
  return c;
}

namespace {

// Classes r mod m (m = p^2, or 16 at p = 2) with v_p(r) <= 1 and r D0 a
// square in Q_p, collapsed to the smallest p-power modulus.
ResidueRule local_square_rule(const Int& p, const Int& D0) {
  Int m = p == 2 ? Int(16) : p * p;
  std::vector<Int> allowed;
  for (Int r = 1; r < m; ++r) {
    if (valuation(r, p) <= 1 && is_square_in_Qp(Int(r * D0), p)) allowed.push_back(r);
  }
  while (mod(m, p) == 0 && m > p) {
    const Int smaller = m / p;
    std::vector<Int> reduced;
    for (const Int& r : allowed) {
      Int s = mod(r, smaller);
      if (std::find(reduced.begin(), reduced.end(), s) == reduced.end()) reduced.push_back(s);
    }
    // Collapse only if every lift of a reduced class is allowed.
    bool periodic = true;
    for (const Int& s : reduced)
      for (Int k = 0; k < p && periodic; ++k)
        if (std::find(allowed.begin(), allowed.end(), Int(s + k * smaller)) == allowed.end())
          periodic = false;
    if (!periodic) break;
    std::sort(reduced.begin(), reduced.end());
    allowed = reduced;
    m = smaller;
  }
  return {ResidueRule::Kind::Residues, m, allowed, 1};
}

}  // namespace

TwistCondition generic_condition(const TwoIsogeny& iso, const Int& D0) {
  if (D0 == 0) throw InvalidInput("D0 = 0");
  const SelmerContext ctx = SelmerContext::make(iso);
  TwistCondition c;
  c.prime = false;
  // D D0 > 0 at the real place.
  c.sign = sgn(D0);
  for (const Place& v : ctx.places) {
    if (v.is_infinite()) continue;
    const Int& p = v.p;
    if (p != 2 && mod(D0, p) != 0) {
      c.rules.push_back({ResidueRule::Kind::Jacobi, p, {}, jacobi(D0, p)});
      c.coprime_to *= p;
    } else {
      c.rules.push_back(local_square_rule(p, D0));
    }
  }
  return c;
}

std::vector<Int> sieve(const TwistCondition& cond, const Int& limit, const SieveOptions& opts) {
  if (limit < 2) throw InvalidInput("sieve limit below 2");
  if (!limit.fits_slong_p()) throw InvalidInput("sieve limit too large");
  const long n = limit.get_si();
  auto qualifies = [&](long d) {
    const Int D(d);
    if (!cond.accepts(D)) return false;
    if (opts.torsion_guard && opts.iso) {
      const TwoIsogeny tw = twist(*opts.iso, D);
      if (torsion_subgroup(tw.domain.model()).order() != 2) return false;
      if (torsion_subgroup(tw.codomain.model()).order() != 2) return false;
    }
    return true;
  };
  const unsigned width = std::max(1u, opts.parallelism);
  std::vector<char> hit(static_cast<size_t>(n + 1), 0);
  auto run = [&](unsigned lane) {
    for (long d = 2 + lane; d <= n; d += width) hit[static_cast<size_t>(d)] = qualifies(d);
  };
  if (width == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < width; ++i) pool.emplace_back(run, i);
    for (auto& t : pool) t.join();
  }
  std::vector<Int> out;
  for (long d = 2; d <= n; ++d)
    if (hit[static_cast<size_t>(d)]) out.emplace_back(d);
  return out;
}

double alpha00(int terms) {
  double prod = 1.0, pow2 = 1.0;
  for (int s = 1; s <= terms; ++s) {
    pow2 /= 2.0;
    prod *= 1.0 - pow2;
  }
  return prod;
}

}  // namespace bsdtwins
