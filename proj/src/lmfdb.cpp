// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include "bsdtwins/lmfdb.hpp"

#include <httplib.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "bsdtwins/errors.hpp"

namespace bsdtwins {

using json = nlohmann::ordered_json;

namespace {

Int int_from(const nlohmann::json& v) {
  if (v.is_number_integer()) return Int(static_cast<long>(v.get<long long>()));
  if (v.is_string()) return Int(v.get<std::string>());
  throw InvalidInput("expected an integer, got " + v.dump());
}

json int_json(const Int& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

}  // namespace

json to_json(const CurveRecord& r) {
  json ainvs = json::array();
  for (const Int& a : r.ainvs) ainvs.push_back(int_json(a));
  json local = json::array();
  for (const auto& [p, c] : r.tamagawa) {
    auto k = r.kodaira.find(p);
    local.push_back(json{{"p", int_json(p)},
                         {"tamagawa", c},
                         {"kodaira", k == r.kodaira.end() ? "" : k->second}});
  }
  return json{{"label", r.label},
              {"ainvs", ainvs},
              {"conductor", int_json(r.conductor)},
              {"min_discriminant", r.min_discriminant.get_str()},
              {"torsion_structure", r.torsion_structure},
              {"local", local},
              {"real_period", r.real_period},
              {"j_invariant", r.j.get_str()}};
}

CurveRecord record_from_json(const nlohmann::json& j) {
  try {
    CurveRecord r;
    r.label = j.at("label").get<std::string>();
    const auto& a = j.at("ainvs");
    if (!a.is_array() || a.size() != 5) throw InvalidInput("ainvs must have 5 entries");
    for (size_t i = 0; i < 5; ++i) r.ainvs[i] = int_from(a[i]);
    r.conductor = int_from(j.at("conductor"));
    r.min_discriminant = int_from(j.at("min_discriminant"));
    r.torsion_structure = j.at("torsion_structure").get<std::vector<long>>();
    for (const auto& l : j.at("local")) {
      const Int p = int_from(l.at("p"));
      r.tamagawa[p] = l.at("tamagawa").get<long>();
      r.kodaira[p] = l.at("kodaira").get<std::string>();
    }
    r.real_period = j.at("real_period").get<std::string>();
    r.j = Rat(j.at("j_invariant").get<std::string>());
    r.j.canonicalize();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed curve record: ") + e.what());
  }
}

bool valid_label(const std::string& label) {
  static const std::regex re("^[1-9][0-9]*\\.[a-z]+[1-9][0-9]*$");
  return std::regex_match(label, re);
}

KodairaSymbol kodaira_from_code(long code) {
  using K = KodairaSymbol::Kind;
  switch (code) {
    case 1: return {K::I0, 0};
    case 2: return {K::II, 0};
    case 3: return {K::III, 0};
    case 4: return {K::IV, 0};
    case -1: return {K::I0Star, 0};
    case -2: return {K::IIStar, 0};
    case -3: return {K::IIIStar, 0};
    case -4: return {K::IVStar, 0};
    default: break;
  }
  if (code > 4) return {K::In, code - 4};
  if (code < -4) return {K::InStar, -code - 4};
  throw InvalidInput("unknown Kodaira code " + std::to_string(code));
}

LmfdbClient::LmfdbClient(ClientOptions opts) : opts_(std::move(opts)) {}

std::filesystem::path LmfdbClient::cache_path(const std::string& label) const {
  return opts_.cache_dir / (label + ".json");
}

CurveRecord LmfdbClient::fetch(const std::string& label) {
  if (!valid_label(label)) throw InvalidInput("malformed label '" + label + "'");
  const auto path = cache_path(label);
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidInput("unreadable fixture " + path.string() + ": " + e.what());
    }
    if (doc.value("schema", "") != kFixtureSchema) {
      throw InvalidInput("fixture " + path.string() + " has schema '" + doc.value("schema", "") +
                         "', expected '" + kFixtureSchema + "'");
    }
    CurveRecord r = record_from_json(doc.at("record"));
    if (r.label != label) throw InvalidInput("fixture " + path.string() + " holds " + r.label);
    return r;
  }
  if (!opts_.online) {
    throw NetworkUnavailable("no cached record for " + label + " and online lookups are disabled");
  }
  CurveRecord r = download(label);
  std::filesystem::create_directories(opts_.cache_dir);
  json doc{{"schema", kFixtureSchema}, {"source", opts_.host + "/api"}, {"record", to_json(r)}};
  std::ofstream(path) << doc.dump(2) << "\n";
  return r;
}

CurveRecord LmfdbClient::download(const std::string& label) {
  httplib::Client cli(opts_.host);
  cli.set_connection_timeout(opts_.timeout_seconds);
  cli.set_read_timeout(opts_.timeout_seconds);
  cli.set_follow_location(true);
  auto get = [&](const std::string& table) {
    ++network_calls_;
    const std::string path = "/api/" + table + "/?lmfdb_label=" + label + "&_format=json";
    auto res = cli.Get(path);
    if (!res) {
      throw NetworkUnavailable("GET " + opts_.host + path + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status != 200) {
      throw NetworkUnavailable("GET " + opts_.host + path + " returned " + std::to_string(res->status));
    }
    nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.contains("data")) {
      throw NetworkUnavailable("unexpected response from " + opts_.host + path);
    }
    return body.at("data");
  };
  const nlohmann::json curve = get("ec_curvedata");
  if (curve.empty()) throw UnknownLabel("no curve with label " + label);
  const auto& c = curve.at(0);
  CurveRecord r;
  r.label = label;
  for (size_t i = 0; i < 5; ++i) r.ainvs[i] = int_from(c.at("ainvs").at(i));
  r.conductor = int_from(c.at("conductor"));
  r.min_discriminant = int_from(c.at("absD")) * c.at("signD").get<int>();
  r.torsion_structure = c.at("torsion_structure").get<std::vector<long>>();
  r.j = make_rat(int_from(c.at("jinv").at(0)), int_from(c.at("jinv").at(1)));
  for (const auto& l : get("ec_localdata")) {
    const Int p = int_from(l.at("prime"));
    r.tamagawa[p] = l.at("tamagawa_number").get<long>();
    r.kodaira[p] = kodaira_from_code(l.at("kodaira_symbol").get<long>()).to_string();
  }
  const nlohmann::json bsd = get("ec_mwbsd");
  if (bsd.empty()) throw UnknownLabel("no BSD data for " + label);
  const auto& period = bsd.at(0).at("real_period");
  r.real_period = period.is_string() ? period.get<std::string>() : period.dump();
  return r;
}

namespace {

// Value and absolute tolerance (one unit in the last printed place).
std::pair<Real, Real> parse_printed(const std::string& s) {
  static const std::regex re("^\\s*([0-9]*)(?:\\.([0-9]*))?(?:[eE]([+-]?[0-9]+))?\\s*$");
  std::smatch m;
  if (!std::regex_match(s, m, re) || (m[1].length() == 0 && m[2].length() == 0)) {
    throw InvalidInput("unparseable period '" + s + "'");
  }
  const long decimals = static_cast<long>(m[2].length());
  const long exponent = m[3].matched ? std::stol(m[3].str()) : 0;
  Real value(s);
  Real tol = boost::multiprecision::pow(Real(10), exponent - decimals);
  return {value, tol};
}

}  // namespace

std::vector<Discrepancy> crosscheck(const CurveRecord& rec, const GlobalData& g,
                                    const TorsionGroup& torsion, const RealPeriod& period,
                                    const Rat& j) {
  std::vector<Discrepancy> out;
  auto check = [&](const std::string& field, const std::string& expected, const std::string& computed) {
    if (expected != computed) out.push_back({field, expected, computed});
  };
  check("conductor", rec.conductor.get_str(), g.conductor.get_str());
  check("min_discriminant", rec.min_discriminant.get_str(), g.min_discriminant.get_str());
  check("j_invariant", rec.j.get_str(), j.get_str());
  std::vector<long> structure;
  if (torsion.n1 > 1) structure.push_back(torsion.n1);
  if (torsion.n2 > 1) structure.push_back(torsion.n2);
  auto list = [](const std::vector<long>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };
  check("torsion_structure", list(rec.torsion_structure), list(structure));
  std::string expected_primes, computed_primes;
  for (const auto& [p, c] : rec.tamagawa) expected_primes += p.get_str() + " ";
  for (const auto& [p, ld] : g.local) computed_primes += p.get_str() + " ";
  check("bad_primes", expected_primes, computed_primes);
  for (const auto& [p, c] : rec.tamagawa) {
    auto it = g.local.find(p);
    if (it == g.local.end()) continue;
    check("tamagawa[" + p.get_str() + "]", std::to_string(c), std::to_string(it->second.tamagawa));
    auto k = rec.kodaira.find(p);
    if (k != rec.kodaira.end())
      check("kodaira[" + p.get_str() + "]", k->second, it->second.kodaira.to_string());
  }
  PrecisionScope scope(period.digits + 10);
  auto [value, tol] = parse_printed(rec.real_period);
  if (boost::multiprecision::abs(value - period.value) > tol) {
    out.push_back({"real_period", rec.real_period, period.to_string(static_cast<unsigned>(rec.real_period.size()))});
  }
  return out;
}

std::vector<Discrepancy> crosscheck(const CurveRecord& rec) {
  const WeierstrassModel e = rec.model();
  const GlobalData g = global_data(e);
  return crosscheck(rec, g, torsion_subgroup(e), real_period(e), derived_invariants(e).j);
}

}  // namespace bsdtwins
