// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/report.hpp"

#include <future>
#include <iomanip>
#include <sstream>

#include "bsdtwins/errors.hpp"
#include "bsdtwins/isogeny.hpp"

namespace bsdtwins {

using json = nlohmann::ordered_json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "EQUAL";
    case Verdict::NotEqual: return "NOT-EQUAL";
    case Verdict::Conditional: return "CONDITIONAL";
  }
  return "?";
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "table") return Format::Table;
  if (name == "markdown") return Format::Markdown;
  throw InvalidInput("unknown format '" + name + "'");
}

std::string factored(const Int& n) {
  if (n == 0) return "0";
  return factor(n).to_string();
}

const ReportEntry* BsdReport::entry(const std::string& invariant) const {
  for (const auto& e : entries)
    if (e.invariant == invariant) return &e;
  return nullptr;
}

TwoIsogeny link_pair(const WeierstrassModel& e1, const WeierstrassModel& e2) {
  const std::vector<AbCurve> targets = ab_forms(e2);
  for (const AbCurve& f : ab_forms(e1)) {
    const TwoIsogeny iso = two_isogeny(f.A, f.B);
    for (const AbCurve& t : targets)
      if (ab_equivalent(iso.codomain, t)) return iso;
  }
  throw NotIsogenous(e1.to_string() + " and " + e2.to_string() +
                     " are not linked by a rational 2-isogeny");
}

namespace {

std::string kodaira_list(const GlobalData& g, const Int& D, bool dividing_d, bool latex) {
  std::string out;
  for (const auto& [p, ld] : g.local) {
    if ((mod(D, p) == 0) != dividing_d) continue;
    if (!out.empty()) out += ", ";
    out += (latex ? ld.kodaira.to_latex() : ld.kodaira.to_string()) + "(p=" + p.get_str() + ")";
  }
  return out.empty() ? "-" : out;
}

std::string tamagawa_list(const GlobalData& g, const Int& D, bool dividing_d) {
  std::string out;
  for (const auto& [p, ld] : g.local) {
    if ((mod(D, p) == 0) != dividing_d) continue;
    if (!out.empty()) out += ", ";
    out += std::to_string(ld.tamagawa) + "(p=" + p.get_str() + ")";
  }
  return out.empty() ? "-" : out;
}

bool same_local(const GlobalData& a, const GlobalData& b, bool kodaira) {
  if (a.local.size() != b.local.size()) return false;
  for (const auto& [p, ld] : a.local) {
    auto it = b.local.find(p);
    if (it == b.local.end()) return false;
    if (kodaira ? !(it->second.kodaira == ld.kodaira) : it->second.tamagawa != ld.tamagawa)
      return false;
  }
  return true;
}

std::string sha_text(const CurveSummary& c) {
  if (c.sha2_dim.proven() && c.sha2_dim.lo == 0) return "0 (2-part proven)";
  return "Sha[2] dim in " + c.sha2_dim.to_string();
}

}  // namespace

BsdReport verify_pair(const WeierstrassModel& e1, const WeierstrassModel& e2, const Int& D,
                      const ReportOptions& opts) {
  if (D == 0 || !is_squarefree(D, opts.selmer.budget)) {
    throw NotSquarefree("twist parameter " + D.get_str() + " is not squarefree");
  }
  BsdReport r;
  r.twist = D;
  r.isogeny = twist(link_pair(e1, e2), D);
  const std::string suffix = D == 1 ? "" : "^" + D.get_str();
  const AbCurve forms[2] = {r.isogeny.domain, r.isogeny.codomain};

  // The two descents dominate the cost; the curve data runs alongside.
  SelmerOptions sel = opts.selmer;
  auto phi = std::async(std::launch::async, [&] { return selmer_group(r.isogeny, Direction::Phi, sel); });
  auto phihat =
      std::async(std::launch::async, [&] { return selmer_group(r.isogeny, Direction::PhiHat, sel); });

  for (int i = 0; i < 2; ++i) {
    CurveSummary& c = r.curve[i];
    c.name = opts.names[i] + suffix;
    c.model = forms[i].model();
    c.global = global_data(c.model, opts.selmer.budget);
    c.j = derived_invariants(c.model).j;
    c.mordell_weil.torsion = torsion_subgroup(c.model);
    c.period = real_period(c.model, {opts.digits, true});
  }
  r.sel_phi = phi.get();
  r.sel_phihat = phihat.get();
  r.descent = sel2_bound_and_deduce(r.sel_phi.dimension, r.sel_phihat.dimension, r.isogeny,
                                    r.curve[0].mordell_weil.torsion, r.curve[1].mordell_weil.torsion);
  const bool rank_zero = r.descent.rank_zero_proven();
  const bool sha2_zero = r.descent.sha2_trivial_proven();
  for (int i = 0; i < 2; ++i) {
    CurveSummary& c = r.curve[i];
    c.rank = r.descent.rank;
    c.sha2_dim = r.descent.sha2_dim[i];
    c.mordell_weil.rank = rank_zero ? 0 : r.descent.rank.hi;
    c.mordell_weil.provenance = rank_zero ? RankProvenance::ProvenByDescent : RankProvenance::Unknown;
    c.regulator = rank_zero ? "1" : "unknown";
  }
  r.parity = rank_zero && sha2_zero ? RankParity::Even : RankParity::Unknown;
  r.period = period_equality_check(r.curve[0].period, r.curve[1].period, r.curve[0].global,
                                   r.curve[1].global, r.parity);
  r.non_isomorphic = r.curve[0].j != r.curve[1].j;

  const CurveSummary &c1 = r.curve[0], &c2 = r.curve[1];
  const bool torsion_equal = c1.mordell_weil.torsion.same_structure(c2.mordell_weil.torsion);
  const bool two_primary_equal =
      c1.mordell_weil.torsion.two_primary() == c2.mordell_weil.torsion.two_primary();
  const bool transfer = sha2_zero && two_primary_equal;

  r.entries.push_back({"L-function", "equal-by-isogeny", "rational 2-isogeny " +
                       r.isogeny.domain.model().to_string() + " -> " +
                       r.isogeny.codomain.model().to_string(), true});
  if (!torsion_equal) {
    r.entries.push_back({"Mordell-Weil", "not-equal", "torsion subgroups differ", true});
  } else if (rank_zero) {
    r.entries.push_back({"Mordell-Weil", "equal",
                         transfer ? "rank 0 by 2-isogeny descent; isomorphic by 2-primary transfer"
                                  : "rank 0 by 2-isogeny descent; torsion computed",
                         true});
  } else {
    r.entries.push_back({"Mordell-Weil", "unknown", "rank in " + r.descent.rank.to_string(), false});
  }
  if (rank_zero) r.entries.push_back({"Regulator", "equal", "rank 0, both regulators 1", true});
  else r.entries.push_back({"Regulator", "unknown", "rank not proven", false});

  {
    ReportEntry e{"Real period", to_string(r.period.verdict), r.period.basis, false};
    e.proven = r.period.verdict == PeriodVerdict::NotEqual ||
               (r.period.verdict == PeriodVerdict::Equal && r.period.criterion_invoked);
    r.entries.push_back(e);
  }
  const bool tam = same_local(c1.global, c2.global, false);
  r.entries.push_back({"Tamagawa numbers", tam ? "equal" : "not-equal", "Tate's algorithm", true});
  if (transfer) {
    r.entries.push_back({"Sha", "equal",
                         "Sha[2] = 0 for both (2-part proven); full group equal by transfer, "
                         "unconditional for the group isomorphism, finiteness not asserted",
                         true});
  } else {
    r.entries.push_back({"Sha", "unknown",
                         "Sha[2] dims in " + c1.sha2_dim.to_string() + " and " + c2.sha2_dim.to_string(),
                         false});
  }
  const bool kod = same_local(c1.global, c2.global, true);
  r.entries.push_back({"Kodaira symbols", kod ? "equal" : "not-equal", "Tate's algorithm", true});
  const bool disc = c1.global.min_discriminant == c2.global.min_discriminant;
  r.entries.push_back({"Minimal discriminant", disc ? "equal" : "not-equal",
                       "Tate's algorithm, checked against Ogg's formula", true});
  const bool cond = c1.global.conductor == c2.global.conductor;
  r.entries.push_back({"Conductor", cond ? "equal" : "not-equal", "Tate's algorithm", true});
  if (!cond) throw Inconsistent("isogenous curves with different conductors");

  bool any_unknown = false, any_mismatch = false;
  for (const auto& e : r.entries) {
    if (e.verdict == "not-equal") any_mismatch = true;
    else if (e.verdict == "unknown" || !e.proven) any_unknown = true;
  }
  r.overall = any_mismatch ? Verdict::NotEqual : any_unknown ? Verdict::Conditional : Verdict::Equal;
  return r;
}

namespace {

json number(const Int& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

json ab_json(const AbCurve& c) { return json{{"A", number(c.A)}, {"B", number(c.B)}}; }

json certificate_json(const LocalCertificate& c) {
  json out{{"soluble", c.soluble}};
  if (c.soluble) {
    out["witness"] = c.witness;
  } else {
    json aff = json::array(), inv = json::array();
    for (auto o : c.affine) aff.push_back(to_string(o));
    for (auto o : c.inverted) inv.push_back(to_string(o));
    out["affine"] = aff;
    out["inverted"] = inv;
  }
  return out;
}

}  // namespace

json to_json(const LocalData& ld) {
  return json{{"p", number(ld.p)},
              {"kodaira", ld.kodaira.to_string()},
              {"reduction", to_string(ld.reduction)},
              {"conductor_exponent", ld.conductor_exponent},
              {"tamagawa", ld.tamagawa},
              {"components", ld.components},
              {"min_disc_valuation", ld.min_disc_valuation}};
}

json to_json(const SelmerGroup& g, const TwoIsogeny& iso) {
  json places = json::array();
  for (const auto& v : g.places) places.push_back(v.to_string());
  json classes = json::array();
  for (const auto& cls : g.classes) {
    json at = json::object();
    for (const auto& c : cls.local) at[c.place.to_string()] = certificate_json(c);
    classes.push_back(json{{"d", number(cls.d)}, {"soluble_at", at}, {"in_selmer", cls.in_selmer}});
  }
  json elements = json::array();
  for (const Int& d : g.elements) elements.push_back(number(d));
  return json{{"direction", to_string(g.direction)},
              {"isogeny", json{{"domain", ab_json(iso.domain)}, {"codomain", ab_json(iso.codomain)}}},
              {"S", places},
              {"classes", classes},
              {"elements", elements},
              {"dimension", g.dimension}};
}

json to_json(const BsdReport& r) {
  json curves = json::array();
  for (const auto& c : r.curve) {
    json ainvs = json::array();
    for (const Int& a : c.model.ainvs()) ainvs.push_back(number(a));
    json local = json::array();
    for (const auto& [p, ld] : c.global.local) local.push_back(to_json(ld));
    curves.push_back(json{
        {"name", c.name},
        {"ainvs", ainvs},
        {"conductor", number(c.global.conductor)},
        {"min_discriminant", number(c.global.min_discriminant)},
        {"min_discriminant_factored", factored(c.global.min_discriminant)},
        {"j_invariant", c.j.get_str()},
        {"torsion", c.mordell_weil.torsion.to_string()},
        {"mordell_weil", c.mordell_weil.to_string()},
        {"rank", c.rank.to_string()},
        {"rank_provenance", to_string(c.mordell_weil.provenance)},
        {"regulator", c.regulator},
        {"real_period", c.period.to_string(40)},
        {"period_scaling_u", c.period.u.get_str()},
        {"tamagawa_product", c.global.tamagawa_product()},
        {"sha2_dim", c.sha2_dim.to_string()},
        {"local", local},
    });
  }
  json sel_phi = json::array(), sel_phihat = json::array();
  for (const Int& d : r.sel_phi.elements) sel_phi.push_back(number(d));
  for (const Int& d : r.sel_phihat.elements) sel_phihat.push_back(number(d));
  const DescentVerdict& v = r.descent;
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back(json{{"invariant", e.invariant},
                           {"verdict", e.verdict},
                           {"proven", e.proven},
                           {"provenance", e.provenance}});
  }
  std::ostringstream rel;
  rel << std::scientific << std::setprecision(3) << static_cast<double>(r.period.relative_difference);
  return json{
      {"twist", number(r.twist)},
      {"isogeny", json{{"domain", ab_json(r.isogeny.domain)}, {"codomain", ab_json(r.isogeny.codomain)}}},
      {"curves", curves},
      {"descent",
       json{{"sel_phi", sel_phi},
            {"sel_phihat", sel_phihat},
            {"dim_sel_phi", v.dim_sel_phi},
            {"dim_sel_phihat", v.dim_sel_phihat},
            {"quotient_dim", {v.quotient_dim[0], v.quotient_dim[1]}},
            {"two_torsion_dim", {v.two_torsion_dim[0], v.two_torsion_dim[1]}},
            {"sel2_bound", {v.sel2_bound[0], v.sel2_bound[1]}},
            {"rank", v.rank.to_string()},
            {"sha2_dim", {v.sha2_dim[0].to_string(), v.sha2_dim[1].to_string()}},
            {"tamagawa_ratio", v.tamagawa_ratio.get_str()}}},
      {"period_comparison",
       json{{"verdict", to_string(r.period.verdict)},
            {"criterion_invoked", r.period.criterion_invoked},
            {"relative_difference", rel.str()},
            {"basis", r.period.basis}}},
      {"analytic_rank_parity",
       json{{"value", to_string(r.parity)},
            {"basis", r.parity == RankParity::Even
                          ? "even, by Monsky via Sha[2] = 0 and rank 0"
                          : "not determined"}}},
      {"entries", entries},
      {"non_isomorphic", r.non_isomorphic},
      {"overall", to_string(r.overall)},
  };
}

namespace {

struct Row {
  std::string label, left, right;
};

std::vector<Row> rows(const BsdReport& r, bool latex) {
  const CurveSummary &a = r.curve[0], &b = r.curve[1];
  const std::string dagger = latex ? " †" : "";
  std::vector<Row> out{
      {"Model", a.model.to_string(), b.model.to_string()},
      {"Conductor", a.global.conductor.get_str(), b.global.conductor.get_str()},
      {"Minimal discriminant", factored(a.global.min_discriminant), factored(b.global.min_discriminant)},
      {"j-invariant", a.j.get_str(), b.j.get_str()},
      {"Mordell-Weil group", a.mordell_weil.to_string(), b.mordell_weil.to_string()},
      {"Regulator", a.regulator, b.regulator},
      {"Real period", a.period.to_string(12), b.period.to_string(12)},
      {"Tamagawa numbers", tamagawa_list(a.global, r.twist, false), tamagawa_list(b.global, r.twist, false)},
      {"Kodaira symbols", kodaira_list(a.global, r.twist, false, latex),
       kodaira_list(b.global, r.twist, false, latex)},
  };
  bool twist_primes = false;
  for (const auto& [p, ld] : a.global.local)
    if (mod(r.twist, p) == 0) twist_primes = true;
  if (twist_primes) {
    const std::string mark = latex ? " ‡" : " (p | D)";
    out.push_back({"Tamagawa numbers" + mark, tamagawa_list(a.global, r.twist, true),
                   tamagawa_list(b.global, r.twist, true)});
    out.push_back({"Kodaira symbols" + mark, kodaira_list(a.global, r.twist, true, latex),
                   kodaira_list(b.global, r.twist, true, latex)});
  }
  out.push_back({"Sha", sha_text(a) + dagger, sha_text(b) + dagger});
  return out;
}

std::string render_table(const BsdReport& r) {
  std::vector<Row> body = rows(r, false);
  const ReportEntry* sha = r.entry("Sha");
  if (sha && sha->verdict == "equal") {
    for (auto& row : body) {
      if (row.label == "Sha") {
        row.left += ", full group equal by transfer";
        row.right += ", full group equal by transfer";
      }
    }
  }
  size_t w0 = 9, w1 = r.curve[0].name.size(), w2 = r.curve[1].name.size();
  for (const auto& row : body) {
    w0 = std::max(w0, row.label.size());
    w1 = std::max(w1, row.left.size());
    w2 = std::max(w2, row.right.size());
  }
  std::ostringstream os;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c) {
    os << std::left << std::setw(static_cast<int>(w0)) << a << "  " << std::setw(static_cast<int>(w1))
       << b << "  " << c << "\n";
  };
  line("Invariant", r.curve[0].name, r.curve[1].name);
  line(std::string(w0, '-'), std::string(w1, '-'), std::string(w2, '-'));
  for (const auto& row : body) line(row.label, row.left, row.right);
  os << "\n";
  for (const auto& e : r.entries) os << e.invariant << ": " << e.verdict << " (" << e.provenance << ")\n";
  os << "Selmer: Sel^phi = {";
  for (size_t i = 0; i < r.sel_phi.elements.size(); ++i) os << (i ? "," : "") << r.sel_phi.elements[i];
  os << "}, dim Sel^phihat = " << r.sel_phihat.dimension << ", Sel^2 <= " << r.descent.sel2_bound[0]
     << ", rank " << r.descent.rank.to_string() << "\n";
  if (r.non_isomorphic) os << "Non-isomorphic: j-invariants differ\n";
  os << "Overall: " << to_string(r.overall) << "\n";
  return os.str();
}

std::string render_markdown(const BsdReport& r) {
  std::ostringstream os;
  os << "| | " << r.curve[0].name << " | " << r.curve[1].name << " |\n|---|---|---|\n";
  for (const auto& row : rows(r, true)) {
    auto esc = [](std::string s) {
      for (size_t i = 0; (i = s.find('|', i)) != std::string::npos; i += 2) s.replace(i, 1, "\\|");
      return s;
    };
    os << "| " << esc(row.label) << " | " << esc(row.left) << " | " << esc(row.right) << " |\n";
  }
  os << "\n";
  const ReportEntry* sha = r.entry("Sha");
  if (sha) os << "† " << sha->provenance << ".\n";
  bool twist_primes = false;
  for (const auto& [p, ld] : r.curve[0].global.local)
    if (mod(r.twist, p) == 0) twist_primes = true;
  if (twist_primes) os << "‡ primes dividing D = " << r.twist << ".\n";
  if (r.non_isomorphic) os << "\nThe curves are not isomorphic (different j-invariants).\n";
  os << "\n**Overall: " << to_string(r.overall) << "**\n";
  return os.str();
}

}  // namespace

std::string render(const BsdReport& r, Format f) {
  switch (f) {
    case Format::Json: return to_json(r).dump(2) + "\n";
    case Format::Table: return render_table(r);
    case Format::Markdown: return render_markdown(r);
  }
  return {};
}

}  // namespace bsdtwins
