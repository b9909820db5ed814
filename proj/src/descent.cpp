// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/descent.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "bsdtwins/errors.hpp"

namespace bsdtwins {

std::string to_string(Direction d) { return d == Direction::Phi ? "phi" : "phihat"; }

std::string to_string(Obstruction o) {
  switch (o) {
    case Obstruction::NonResidue: return "non-residue";
    case Obstruction::OddValuation: return "odd-valuation";
    case Obstruction::RealSign: return "real-sign";
  }
  return "?";
}

std::string TorsorQuartic::to_string() const {
  return d.get_str() + " y^2 = " + Int(d * d).get_str() + " + " + Int(a * d).get_str() + " x^2 + " +
         b.get_str() + " x^4";
}

std::set<Obstruction> LocalCertificate::all_obstructions() const {
  std::set<Obstruction> out = affine;
  out.insert(inverted.begin(), inverted.end());
  return out;
}

std::string LocalCertificate::summary() const {
  if (soluble) return "soluble: " + witness;
  auto names = [](const std::set<Obstruction>& s) {
    std::string r;
    for (auto o : s) r += (r.empty() ? "" : ",") + bsdtwins::to_string(o);
    return r.empty() ? std::string("-") : r;
  };
  if (place.is_infinite()) return "insoluble: real-sign";
  return "insoluble: affine{" + names(affine) + "} inverted{" + names(inverted) + "}";
}

SelmerContext SelmerContext::make(const TwoIsogeny& iso, const FactorBudget& budget) {
  SelmerContext ctx{iso, {}, {}};
  std::set<Int> primes{Int(2)};
  // disc(A, B) = 16 B^2 (A^2 - 4B); the codomain adds nothing new beyond
  // these two factors up to powers of 2.
  for (const Int& n : {iso.domain.B, Int(iso.domain.A * iso.domain.A - 4 * iso.domain.B),
                       iso.codomain.B, Int(iso.codomain.A * iso.codomain.A - 4 * iso.codomain.B)}) {
    for (const auto& pe : factor(n, budget).factors) primes.insert(pe.prime);
  }
  ctx.places.push_back(Place::infinity());
  ctx.basis.push_back(Int(-1));
  for (const Int& p : primes) {
    ctx.places.push_back(Place{p});
    ctx.basis.push_back(p);
  }
  return ctx;
}

std::vector<Int> q_s_2(const SelmerContext& ctx) {
  const size_t k = ctx.basis.size();
  if (k > 30) throw InvalidInput("too many primes in S");
  std::vector<Int> out;
  out.reserve(size_t(1) << k);
  for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
    Int d = 1;
    for (size_t i = 0; i < k; ++i)
      if (mask & (1UL << i)) d *= ctx.basis[i];
    out.push_back(d);
  }
  return out;
}

TorsorQuartic torsor(const TwoIsogeny& iso, const Int& d, Direction dir) {
  if (dir == Direction::Phi) return {d, iso.codomain.A, iso.codomain.B};
  // The dual lands on (4A, 16B); x -> x/2 rescales it to (A, B).
  return {d, iso.domain.A, iso.domain.B};
}

namespace {

using Quartic = std::array<Int, 5>;  // g_0 .. g_4

// Coefficients of g(x0 + h) in h.
Quartic taylor(const Quartic& g, const Int& x0) {
  Quartic c = g;
  for (int i = 0; i < 4; ++i)
    for (int j = 3; j >= i; --j) c[j] += x0 * c[j + 1];
  return c;
}

long val_or_max(const Int& n, const Int& p) {
  return n == 0 ? std::numeric_limits<long>::max() / 4 : valuation(n, p);
}

struct Tree {
  const Quartic& g;
  const Int& p;
  long cap;
  std::set<Obstruction>& obstructions;
  std::string witness;
  long nodes = 0;

  // Returns true when some x in x0 + p^n Z_p has g(x) a square in Q_p.
  bool search(const Int& x0, long n) {
    ++nodes;
    if (n > cap) {
      throw UndecidedAtDepth("residue tree at p = " + p.get_str() + " exceeded depth " +
                             std::to_string(cap));
    }
    const Quartic c = taylor(g, x0);
    const Int& value = c[0];
    if (value == 0) {
      witness = "x=" + x0.get_str() + " (root)";
      return true;
    }
    if (is_square_in_Qp(value, p)) {
      witness = "x=" + x0.get_str() + " (square value)";
      return true;
    }
    const long l = valuation(value, p);
    if (c[1] != 0 && l > 2 * valuation(c[1], p)) {
      witness = "x=" + x0.get_str() + "+O(" + p.get_str() + "^" + std::to_string(n) +
                ") (Hensel root)";
      return true;
    }
    long L = std::numeric_limits<long>::max();
    for (int k = 1; k <= 4; ++k) L = std::min(L, val_or_max(c[k], p) + k * n);
    if (l < L) {
      // g(x) = g(x0) (1 + O(p^(L - l))) on the whole disc.
      if (l % 2 != 0) {
        obstructions.insert(Obstruction::OddValuation);
        return false;
      }
      if (p != 2 || L - l >= 3) {
        obstructions.insert(Obstruction::NonResidue);
        return false;
      }
    }
    const Int step = ipow(p, static_cast<unsigned long>(n));
    const long children = p.get_si();
    for (long j = 0; j < children; ++j) {
      if (search(x0 + j * step, n + 1)) return true;
    }
    return false;
  }
};

long depth_cap(const Quartic& g, const Int& p, const Int& d) {
  // disc(c4 x^4 + c2 x^2 + c0) = 16 c0 c4 (c2^2 - 4 c0 c4)^2
  const Int disc = 16 * g[0] * g[4] * (g[2] * g[2] - 4 * g[0] * g[4]) * (g[2] * g[2] - 4 * g[0] * g[4]);
  return valuation(disc, p) + 2 * valuation(Int(2 * d), p) + 3;
}

LocalCertificate real_solubility(const Quartic& g, const Place& v) {
  LocalCertificate cert;
  cert.place = v;
  cert.nodes = 1;
  const Int &c0 = g[0], &c2 = g[2], &c4 = g[4];
  if (c4 > 0) {
    cert.soluble = true;
    cert.witness = "infinity";
  } else if (c0 >= 0) {
    cert.soluble = true;
    cert.witness = "x=0";
  } else if (c2 > 0 && c2 * c2 >= 4 * c0 * c4) {
    cert.soluble = true;
    cert.witness = "x^2=" + Rat(make_rat(-c2, 2 * c4)).get_str();
  } else {
    cert.affine.insert(Obstruction::RealSign);
    cert.inverted.insert(Obstruction::RealSign);
  }
  return cert;
}

}  // namespace

LocalCertificate locally_soluble(const TorsorQuartic& t, const Place& v,
                                 const SolubilityOptions& opts) {
  if (t.d == 0) throw InvalidInput("torsor with d = 0");
  // d y^2 = q(x) has a point iff d q(x) is a square.
  const auto q = t.coefficients();
  Quartic g{t.d * q[0], 0, t.d * q[1], 0, t.d * q[2]};
  if (g[4] == 0 && g[2] == 0) throw SingularModel("degenerate torsor " + t.to_string());
  if (v.is_infinite()) return real_solubility(g, v);

  const Int& p = v.p;
  long content = std::numeric_limits<long>::max();
  for (const Int& c : g)
    if (c != 0) content = std::min(content, valuation(c, p));
  const Int scale = ipow(p, static_cast<unsigned long>(2 * (content / 2)));
  for (Int& c : g) c /= scale;

  const long cap = opts.depth_cap_override > 0 ? opts.depth_cap_override : depth_cap(g, p, t.d);
  LocalCertificate cert;
  cert.place = v;

  Tree affine{g, p, cap, cert.affine, {}, 0};
  if (affine.search(Int(0), 0)) {
    cert.soluble = true;
    cert.witness = affine.witness;
    cert.nodes = affine.nodes;
    return cert;
  }
  // x = 1/t with t in pZ_p; t = 0 is the pair of points at infinity.
  const Quartic inv{g[4], g[3], g[2], g[1], g[0]};
  Tree inverted{inv, p, cap, cert.inverted, {}, 0};
  const bool found = inverted.search(Int(0), 1);
  cert.nodes = affine.nodes + inverted.nodes;
  if (found) {
    cert.soluble = true;
    cert.witness = "1/" + inverted.witness;
    if (inverted.witness.rfind("x=0 ", 0) == 0) cert.witness = "infinity";
  }
  return cert;
}

bool SelmerGroup::contains(const Int& d) const {
  return std::binary_search(elements.begin(), elements.end(), d);
}

SelmerGroup selmer_group(const TwoIsogeny& iso, Direction dir, const SelmerOptions& opts) {
  const SelmerContext ctx = SelmerContext::make(iso, opts.budget);
  const std::vector<Int> candidates = q_s_2(ctx);
  SelmerGroup out;
  out.direction = dir;
  out.places = ctx.places;
  out.classes.resize(candidates.size());

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto worker = [&] {
    for (size_t i = next++; i < candidates.size(); i = next++) {
      try {
        SelmerClass& cls = out.classes[i];
        cls.d = candidates[i];
        cls.in_selmer = true;
        const TorsorQuartic t = torsor(iso, cls.d, dir);
        for (const Place& v : ctx.places) {
          cls.local.push_back(locally_soluble(t, v, opts.solubility));
          if (!cls.local.back().soluble) cls.in_selmer = false;
        }
      } catch (...) {
        std::lock_guard<std::mutex> g(failure_lock);
        if (!failure) failure = std::current_exception();
        next = candidates.size();
      }
    }
  };
  const unsigned width = std::max(1u, opts.parallelism);
  if (width == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < width; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (const auto& cls : out.classes)
    if (cls.in_selmer) out.elements.push_back(cls.d);
  std::sort(out.elements.begin(), out.elements.end());

  const size_t n = out.elements.size();
  if (n == 0 || (n & (n - 1)) != 0) {
    throw Inconsistent("Selmer set of size " + std::to_string(n) + " is not a group");
  }
  for (const Int& a : out.elements)
    for (const Int& b : out.elements)
      if (!out.contains(squarefree_part(a * b, opts.budget)))
        throw Inconsistent("Selmer set not closed under multiplication at " + a.get_str() +
                           " * " + b.get_str());
  // The image of the kernel generator always lies in the group.
  const Int image = squarefree_part(dir == Direction::Phi ? iso.codomain.B : iso.domain.B, opts.budget);
  if (!out.contains(Int(1)) || !out.contains(image)) {
    throw Inconsistent("Selmer group misses the image of torsion (" + image.get_str() + ")");
  }
  while ((size_t(1) << out.dimension) < n) ++out.dimension;
  return out;
}

std::string Interval::to_string() const {
  if (proven()) return std::to_string(lo);
  return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

Rat tamagawa_ratio(int e, int f) {
  Rat r = 1;
  if (e >= f) r = Rat(ipow(Int(2), static_cast<unsigned long>(e - f)));
  else r = make_rat(Int(1), ipow(Int(2), static_cast<unsigned long>(f - e)));
  return r;
}

Rat tamagawa_ratio(const SelmerGroup& phi, const SelmerGroup& phihat) {
  return tamagawa_ratio(phi.dimension, phihat.dimension);
}

DescentVerdict sel2_bound_and_deduce(int e, int f, const int quotient_dim[2],
                                     const int two_torsion_dim[2]) {
  if (e < 0 || f < 0) throw InvalidInput("negative Selmer dimension");
  DescentVerdict v;
  v.dim_sel_phi = e;
  v.dim_sel_phihat = f;
  v.tamagawa_ratio = tamagawa_ratio(e, f);
  long rank_hi = std::numeric_limits<long>::max();
  for (int i = 0; i < 2; ++i) {
    v.quotient_dim[i] = quotient_dim[i];
    v.two_torsion_dim[i] = two_torsion_dim[i];
    v.sel2_bound[i] = e + f - quotient_dim[i];
    const long room = v.sel2_bound[i] - two_torsion_dim[i];
    if (room < 0) {
      throw Inconsistent("Sel^2 bound " + std::to_string(v.sel2_bound[i]) +
                         " is below dim E(Q)[2] = " + std::to_string(two_torsion_dim[i]));
    }
    v.sha2_dim[i] = {0, room};
    rank_hi = std::min(rank_hi, room);
  }
  v.rank = {0, rank_hi};
  return v;
}

DescentVerdict sel2_bound_and_deduce(int e, int f, const TwoIsogeny& iso,
                                     const TorsionGroup& t1, const TorsionGroup& t2) {
  const TwoIsogeny dual = dual_isogeny(iso);
  const RationalPoint kernel = RationalPoint::affine(Rat(0), Rat(0));
  auto hits_kernel = [&](const TwoIsogeny& map) {
    for (const auto& p : two_torsion_points(map.domain.model()))
      if (map(p) == kernel) return true;
    return false;
  };
  const int quotient[2] = {hits_kernel(iso) ? 0 : 1, hits_kernel(dual) ? 0 : 1};
  auto dim2 = [](const AbCurve& c) { return two_torsion_points(c.model()).size() == 3 ? 2 : 1; };
  const int dims[2] = {dim2(iso.domain), dim2(iso.codomain)};
  if (dims[0] != (t1.n1 == 2 ? 2 : 1) || dims[1] != (t2.n1 == 2 ? 2 : 1)) {
    throw Inconsistent("torsion subgroup disagrees with the rational 2-torsion of the isogeny");
  }
  return sel2_bound_and_deduce(e, f, quotient, dims);
}

}  // namespace bsdtwins
