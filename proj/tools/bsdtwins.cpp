// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <regex>

#include "bsdtwins/descent.hpp"
#include "bsdtwins/errors.hpp"
#include "bsdtwins/lmfdb.hpp"
#include "bsdtwins/report.hpp"
#include "bsdtwins/twinsearch.hpp"

using namespace bsdtwins;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitConditional = 2;
constexpr int kExitNotEqual = 1;
constexpr int kExitUsage = 64;
constexpr int kExitUnavailable = 69;
constexpr int kExitSoftware = 70;

struct Config {
  unsigned digits = 60;
  unsigned long trial_limit = 1'000'000;
  long depth_cap = 0;
  std::string format = "table";
  bool online = false;
  unsigned jobs = 1;
  std::string fixtures;

  SelmerOptions selmer() const {
    SelmerOptions o;
    o.parallelism = jobs;
    o.solubility.depth_cap_override = depth_cap;
    o.budget.trial_limit = trial_limit;
    return o;
  }
  LmfdbClient client() const {
    ClientOptions o;
    o.cache_dir = fixtures;
    o.online = online;
    return LmfdbClient(o);
  }
};

Int parse_int(const std::string& s, const std::string& what) {
  static const std::regex re("^[+-]?[0-9]+$");
  if (!std::regex_match(s, re)) throw InvalidInput(what + " is not an integer: '" + s + "'");
  return Int(s[0] == '+' ? s.substr(1) : s);
}

// A curve is a label ("38025.ck1"), a-invariants "[a1,a2,a3,a4,a6]", or
// "[A,B]" for y^2 = x(x^2 + A x + B).
WeierstrassModel parse_curve(const std::string& text, const Config& cfg) {
  if (valid_label(text)) return cfg.client().fetch(text).model();
  std::string body = text;
  if (body.size() >= 2 && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
  std::vector<Int> coeffs;
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ',');) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    coeffs.push_back(parse_int(item, "coefficient"));
  }
  WeierstrassModel e;
  if (coeffs.size() == 5) e = WeierstrassModel::from_ainvs({coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]});
  else if (coeffs.size() == 2) e = WeierstrassModel::from_ab(coeffs[0], coeffs[1]);
  else throw InvalidInput("cannot read a curve from '" + text + "'");
  derived_invariants(e);  // rejects singular input
  return e;
}

Int parse_twist(const std::string& s) {
  Int D = parse_int(s, "twist");
  if (D == 0 || !is_squarefree(D)) throw NotSquarefree("twist " + s + " is not squarefree");
  return D;
}

int exit_code_for(const Error& e) {
  const std::string& c = e.code();
  if (c == "InvalidInput" || c == "NotSquarefree" || c == "SingularModel" || c == "NotShortForm" ||
      c == "NotIsogenous" || c == "UnknownLabel")
    return kExitUsage;
  if (c == "NetworkUnavailable") return kExitUnavailable;
  return kExitSoftware;
}

void emit_error(const std::string& code, const std::string& message) {
  std::cerr << json{{"error", code}, {"message", message}}.dump() << "\n";
}

int cmd_verify(const Config& cfg, const std::string& c1, const std::string& c2, const std::string& twist) {
  ReportOptions opts;
  opts.digits = cfg.digits;
  opts.selmer = cfg.selmer();
  const Format fmt = parse_format(cfg.format);
  const WeierstrassModel e1 = parse_curve(c1, cfg), e2 = parse_curve(c2, cfg);
  const BsdReport r = verify_pair(e1, e2, parse_twist(twist), opts);
  std::cout << render(r, fmt);
  switch (r.overall) {
    case Verdict::Equal: return 0;
    case Verdict::Conditional: return kExitConditional;
    case Verdict::NotEqual: return kExitNotEqual;
  }
  return kExitSoftware;
}

int cmd_search(const Config& cfg, const std::string& limit, bool composite) {
  TwistCondition cond = base_pair_condition();
  if (composite) cond.prime = false;
  SieveOptions so;
  so.parallelism = cfg.jobs;
  const std::vector<Int> hits = sieve(cond, parse_int(limit, "limit"), so);
  if (cfg.format == "json") {
    json list = json::array(), diag = json::array();
    for (const Int& D : hits) {
      list.push_back(D.get_si());
      json checks = json::object();
      for (const auto& d : cond.diagnose(D)) checks[d.rule] = d.passed;
      diag.push_back(json{{"D", D.get_si()}, {"checks", checks}});
    }
    std::cout << json{{"condition", cond.to_string()}, {"D", list}, {"diagnostics", diag}}.dump(2) << "\n";
    return 0;
  }
  std::cout << "# " << cond.to_string() << "\n";
  for (const Int& D : hits) {
    std::cout << D;
    for (const auto& d : cond.diagnose(D)) std::cout << "  [" << (d.passed ? "ok" : "no") << "] " << d.rule;
    std::cout << "\n";
  }
  std::string line;
  for (const Int& D : hits) line += (line.empty() ? "" : " ") + D.get_str();
  std::cout << line << "\n";
  return 0;
}

int cmd_selmer(const Config& cfg, const std::string& curve, const std::string& twist,
               const std::string& direction) {
  if (direction != "phi" && direction != "phihat") throw InvalidInput("direction must be phi or phihat");
  const WeierstrassModel e = parse_curve(curve, cfg);
  const auto forms = ab_forms(e);
  if (forms.empty()) throw InvalidInput("curve has no rational 2-torsion point");
  const TwoIsogeny iso = bsdtwins::twist(two_isogeny(forms.front().A, forms.front().B), parse_twist(twist));
  const SelmerGroup g =
      selmer_group(iso, direction == "phi" ? Direction::Phi : Direction::PhiHat, cfg.selmer());
  std::cout << to_json(g, iso).dump(2) << "\n";
  return 0;
}

int cmd_localdata(const Config& cfg, const std::string& curve, const std::string& prime) {
  const WeierstrassModel e = parse_curve(curve, cfg);
  json out;
  if (!prime.empty()) {
    const Int p = parse_int(prime, "prime");
    if (!is_prime(p)) throw InvalidInput(prime + " is not prime");
    out = to_json(tate_algorithm(e, p));
  } else {
    const GlobalData g = global_data(e, cfg.selmer().budget);
    json local = json::array();
    for (const auto& [p, ld] : g.local) local.push_back(to_json(ld));
    out = json{{"conductor", g.conductor.get_str()},
               {"min_discriminant", g.min_discriminant.get_str()},
               {"min_discriminant_factored", factored(g.min_discriminant)},
               {"tamagawa_product", g.tamagawa_product()},
               {"local", local}};
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_period(const Config& cfg, const std::string& curve, const std::string& twist) {
  WeierstrassModel e = parse_curve(curve, cfg);
  const Int D = parse_twist(twist);
  if (D != 1) e = quadratic_twist(e, D);
  const RealPeriod p = real_period(e, {cfg.digits, true});
  if (cfg.format == "json") {
    std::cout << json{{"model", e.to_string()},
                      {"real_period", p.to_string(cfg.digits)},
                      {"u", p.u.get_str()},
                      {"method", p.by_quadrature ? "quadrature" : "agm"}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "Omega = " << p.to_string(12) << "  u = " << p.u << "\n";
  }
  return 0;
}

int cmd_fetch(const Config& cfg, const std::string& label) {
  LmfdbClient client = cfg.client();
  const CurveRecord rec = client.fetch(label);
  const auto issues = crosscheck(rec);
  json disc = json::array();
  for (const auto& d : issues) disc.push_back(json{{"field", d.field}, {"expected", d.expected}, {"computed", d.computed}});
  std::cout << json{{"record", to_json(rec)}, {"discrepancies", disc}}.dump(2) << "\n";
  return issues.empty() ? 0 : kExitNotEqual;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact BSD invariants of 2-isogenous elliptic curve pairs"};
  app.require_subcommand(1);
  Config cfg;
  if (const char* env = std::getenv("BSDTWINS_CACHE_DIR")) cfg.fixtures = env;
  else cfg.fixtures = BSDTWINS_DEFAULT_FIXTURES;

  app.add_option("--digits", cfg.digits, "working precision in decimal digits")->check(CLI::Range(10u, 2000u));
  app.add_option("--trial-limit", cfg.trial_limit, "trial division bound for factoring")->check(CLI::PositiveNumber);
  app.add_option("--depth-cap", cfg.depth_cap, "override the residue tree depth cap")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table", "markdown"}));
  app.add_flag("--online", cfg.online, "allow LMFDB lookups for uncached labels");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--fixtures", cfg.fixtures, "fixture/cache directory (env BSDTWINS_CACHE_DIR)");

  std::string c1, c2, curve, twist = "1", limit = "300", direction = "phi", prime, label;
  bool composite = false;

  auto* verify = app.add_subcommand("verify", "compare the BSD data of E1^D and E2^D");
  verify->add_option("curve1", c1)->required();
  verify->add_option("curve2", c2)->required();
  verify->add_option("--twist", twist, "squarefree D");
  verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "table", "markdown"}));

  auto* search = app.add_subcommand("search", "twist parameters meeting the congruence conditions");
  search->add_option("--limit", limit);
  search->add_flag("--composite", composite, "allow squarefree composite D");
  search->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "table", "markdown"}));

  auto* selmer = app.add_subcommand("selmer", "phi- or phihat-Selmer group of a twist");
  selmer->add_option("curve", curve)->required();
  selmer->add_option("--twist", twist);
  selmer->add_option("--direction", direction)->check(CLI::IsMember({"phi", "phihat"}));

  auto* localdata = app.add_subcommand("localdata", "Tate's algorithm");
  localdata->add_option("curve", curve)->required();
  localdata->add_option("--prime", prime);

  auto* period = app.add_subcommand("period", "real period of the minimal model");
  period->add_option("curve", curve)->required();
  period->add_option("--twist", twist);
  period->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "table", "markdown"}));

  auto* fetch = app.add_subcommand("fetch", "LMFDB record with a crosscheck");
  fetch->add_option("label", label)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("UsageError", e.what());
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(cfg, c1, c2, twist);
    if (*search) return cmd_search(cfg, limit, composite);
    if (*selmer) return cmd_selmer(cfg, curve, twist, direction);
    if (*localdata) return cmd_localdata(cfg, curve, prime);
    if (*period) return cmd_period(cfg, curve, twist);
    if (*fetch) return cmd_fetch(cfg, label);
  } catch (const Error& e) {
    emit_error(e.code(), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    emit_error("InternalError", e.what());
    return kExitSoftware;
  }
  return kExitUsage;
}
