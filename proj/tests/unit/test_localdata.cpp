// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "bsdtwins/localdata.hpp"
#include "oracles.hpp"

using namespace bsdtwins;
using K = KodairaSymbol::Kind;

namespace {

const WeierstrassModel kE1 = WeierstrassModel::from_ab(25350, 2471625);
const WeierstrassModel kE2 = WeierstrassModel::from_ab(-50700, 632736000);

// Tamagawa numbers allowed for each fibre type.
bool tamagawa_fits(const LocalData& ld) {
  const long c = ld.tamagawa;
  switch (ld.kodaira.kind) {
    case K::I0: return c == 1;
    case K::In:
      if (ld.reduction == ReductionType::SplitMultiplicative) return c == ld.kodaira.n;
      return c == (ld.kodaira.n % 2 ? 1 : 2);
    case K::II:
    case K::IIStar: return c == 1;
    case K::III:
    case K::IIIStar: return c == 2;
    case K::IV:
    case K::IVStar: return c == 1 || c == 3;
    case K::I0Star: return c >= 1 && c <= 4 && c != 3;
    case K::InStar: return c == 2 || c == 4;
  }
  return false;
}

}  // namespace

TEST_CASE("Ogg's formula on random models") {
  oracle::Gen gen(31);
  int models = 0, fibres = 0;
  while (models < 520) {
    const WeierstrassModel e = gen.model(2000);
    const GlobalData g = global_data(e);
    for (const auto& [p, ld] : g.local) {
      CHECK_MESSAGE(ogg_check(ld), e.to_string(), " at ", p.get_str());
      CHECK(ld.min_disc_valuation == ld.conductor_exponent + ld.components - 1);
      CHECK(ld.components == ld.kodaira.components());
      CHECK(tamagawa_fits(ld));
      ++fibres;
    }
    ++models;
  }
  CHECK(fibres > 1000);
}

TEST_CASE("Ogg's formula on scaled and shifted models") {
  oracle::Gen gen(32);
  for (int i = 0; i < 200; ++i) {
    const WeierstrassModel e = gen.model(300);
    const long u = gen.range(2, 6);
    const WeierstrassModel big{e.a1 * u, e.a2 * u * u, e.a3 * u * u * u, e.a4 * ipow(Int(u), 4),
                               e.a6 * ipow(Int(u), 6)};
    const WeierstrassModel moved =
        change_coordinates(big, 1, gen.range(-5, 5), gen.range(-5, 5), gen.range(-5, 5));
    const GlobalData g = global_data(e), h = global_data(moved);
    CHECK(g.conductor == h.conductor);
    for (const auto& [p, ld] : h.local) {
      CHECK(ogg_check(ld));
      auto it = g.local.find(p);
      if (it == g.local.end()) {
        CHECK(ld.kodaira.kind == K::I0);
        continue;
      }
      CHECK(ld.kodaira == it->second.kodaira);
      CHECK(ld.tamagawa == it->second.tamagawa);
      CHECK(ld.min_disc_valuation == it->second.min_disc_valuation);
    }
  }
}

TEST_CASE("split and nonsplit multiplicative reduction match a point count") {
  oracle::Gen gen(33);
  int seen = 0;
  for (int i = 0; i < 400; ++i) {
    const WeierstrassModel e = gen.model(400);
    const Int disc = discriminant(e);
    for (const auto& [p, ld] : global_data(e).local) {
      if (p > 400 || ld.conductor_exponent != 1) continue;
      if (valuation(disc, p) != ld.min_disc_valuation) continue;
      const long n = oracle::count_points(e, p.get_si());
      const long q = p.get_si();
      if (ld.reduction == ReductionType::SplitMultiplicative) CHECK(n == q);
      else CHECK(n == q + 2);
      ++seen;
    }
  }
  CHECK(seen > 100);
}

TEST_CASE("base pair local data") {
  const GlobalData g1 = global_data(kE1), g2 = global_data(kE2);
  const Int min_disc = ipow(Int(3), 6) * ipow(Int(5), 9) * ipow(Int(13), 9);
  for (const GlobalData* g : {&g1, &g2}) {
    CHECK(g->conductor == 38025);
    CHECK(g->min_discriminant == min_disc);
    REQUIRE(g->local.size() == 3);
    CHECK(g->local.at(3).kodaira.to_string() == "I0*");
    CHECK(g->local.at(5).kodaira.to_string() == "III*");
    CHECK(g->local.at(13).kodaira.to_string() == "III*");
    for (const auto& [p, ld] : g->local) CHECK(ld.tamagawa == 2);
    CHECK(g->tamagawa_product() == 8);
  }
  const LocalData at2 = tate_algorithm(kE1, 2);
  CHECK(at2.kodaira.kind == K::I0);
  CHECK(at2.conductor_exponent == 0);
}

TEST_CASE("local data of the shipped reference curves") {
  int records = 0;
  for (const auto& entry : std::filesystem::directory_iterator(BSDTWINS_FIXTURE_DIR)) {
    std::ifstream in(entry.path());
    const auto doc = nlohmann::json::parse(in).at("record");
    std::array<Int, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = Int(doc.at("ainvs")[i].dump());
    const GlobalData g = global_data(WeierstrassModel::from_ainvs(a));
    CHECK(g.conductor == Int(doc.at("conductor").dump()));
    CHECK(g.min_discriminant == Int(doc.at("min_discriminant").get<std::string>()));
    for (const auto& l : doc.at("local")) {
      const LocalData& ld = g.local.at(Int(l.at("p").get<long>()));
      CHECK(ld.tamagawa == l.at("tamagawa").get<long>());
      CHECK(ld.kodaira.to_string() == l.at("kodaira").get<std::string>());
    }
    ++records;
  }
  CHECK(records == 16);
}

TEST_CASE("Kodaira symbols print, parse and count components") {
  for (const std::string s : {"I0", "I7", "II", "III", "IV", "I0*", "I3*", "IV*", "III*", "II*"}) {
    const auto k = KodairaSymbol::parse(s);
    REQUIRE(k.has_value());
    CHECK(k->to_string() == s);
  }
  CHECK_FALSE(KodairaSymbol::parse("V").has_value());
  CHECK(KodairaSymbol{K::In, 5}.components() == 5);
  CHECK(KodairaSymbol{K::InStar, 2}.components() == 7);
  CHECK(KodairaSymbol{K::IIIStar, 0}.components() == 8);
  CHECK(KodairaSymbol{K::IIStar, 0}.components() == 9);
  CHECK(KodairaSymbol{K::I0Star, 0}.to_latex() == "I_0^*");
}

TEST_CASE("roots of cubics modulo p") {
  oracle::Gen gen(34);
  for (int i = 0; i < 300; ++i) {
    const long p = std::vector<long>{2, 3, 5, 7, 11, 13}[gen.range(0, 5)];
    const long b = gen.range(-50, 50), c = gen.range(-50, 50), d = gen.range(-50, 50);
    int roots = 0;
    for (long x = 0; x < p; ++x)
      if (((x * x * x + b * x * x + c * x + d) % p + p) % p == 0) ++roots;
    CHECK(cubic_root_count_mod_p(b, c, d, p) == roots);
  }
}
