// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <json.hpp>
#include <string>

namespace {

struct Run {
  int exit = -1;
  std::string out;
};

// Runs the CLI with the shipped fixtures; stderr is discarded.
Run cli(const std::string& args, const std::string& fixtures = BSDTWINS_FIXTURE_DIR) {
  const std::string cmd =
      std::string("'") + BSDTWINS_CLI + "' --fixtures '" + fixtures + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string last_line(const std::string& s) {
  std::string t = s;
  while (!t.empty() && t.back() == '\n') t.pop_back();
  return t.substr(t.find_last_of('\n') + 1);
}

const std::string kE1 = "'[25350,2471625]'";

}  // namespace

TEST_CASE("verify exit codes") {
  const Run ok = cli("verify 38025.ck1 38025.ck2 --twist 17");
  CHECK(ok.exit == 0);
  CHECK(ok.out.find("Overall: EQUAL") != std::string::npos);
  CHECK(cli("verify 38025.ck1 38025.ck2").exit == 0);
  CHECK(cli("verify " + kE1 + " '[-50700,632736000]' --twist 17").exit == 0);
  // Selmer bounds leave the rank open at D = 7.
  const Run cond = cli("verify 38025.ck1 38025.ck2 --twist 7");
  CHECK(cond.exit == 2);
  CHECK(cond.out.find("Overall: CONDITIONAL") != std::string::npos);
  CHECK(cli("verify 38025.ck1 38025.ck2 --twist 2 --format json").exit == 2);
  // For D < 0 the two periods differ by a factor of 2.
  CHECK(cli("verify 38025.ck1 38025.ck2 --twist -3").exit == 1);
  CHECK(cli("verify 4225.h1 4225.h2").exit == 1);
}

TEST_CASE("malformed input exits 64") {
  CHECK(cli("verify '[1,2' 38025.ck2").exit == 64);
  CHECK(cli("verify 38025.ck1 38025.ck2 --twist 18").exit == 64);
  CHECK(cli("verify 38025.ck1 38025.ck2 --twist x").exit == 64);
  CHECK(cli("verify '[0,0,0,0,0]' 38025.ck2").exit == 64);
  CHECK(cli("verify 38025.ck1 '[0,0,1,-1,0]'").exit == 64);
  CHECK(cli("localdata " + kE1 + " --prime 6").exit == 64);
  CHECK(cli("bogus").exit == 64);
  CHECK(cli("").exit == 64);
  CHECK(cli("verify 38025.ck1 38025.ck2 --format xml").exit == 64);
}

TEST_CASE("uncached label offline exits 69") {
  const auto empty = std::filesystem::temp_directory_path() / "bsdtwins-empty-fixtures";
  std::filesystem::create_directories(empty);
  CHECK(cli("fetch 38025.ck1", empty.string()).exit == 69);
  CHECK(cli("verify 38025.ck1 38025.ck2", empty.string()).exit == 69);
  std::filesystem::remove_all(empty);
}

TEST_CASE("output is byte-identical across runs and thread counts") {
  const Run a = cli("--jobs 1 verify 38025.ck1 38025.ck2 --twist 233 --format json");
  const Run b = cli("--jobs 4 verify 38025.ck1 38025.ck2 --twist 233 --format json");
  const Run c = cli("--jobs 4 verify 38025.ck1 38025.ck2 --twist 233 --format json");
  CHECK(a.exit == 0);
  CHECK(a.out == b.out);
  CHECK(b.out == c.out);
  CHECK(nlohmann::json::parse(a.out).at("overall") == "EQUAL");
  CHECK(cli("--jobs 3 search --limit 2000").out == cli("search --limit 2000").out);
}

TEST_CASE("search, localdata, selmer, period and fetch") {
  const Run s = cli("search --limit 300");
  CHECK(s.exit == 0);
  CHECK(last_line(s.out) == "17 113 233 257");
  CHECK(nlohmann::json::parse(cli("search --limit 300 --format json").out).at("D") ==
        nlohmann::json::array({17, 113, 233, 257}));

  const Run l = cli("localdata " + kE1 + " --prime 5");
  CHECK(l.exit == 0);
  const auto ld = nlohmann::json::parse(l.out);
  CHECK(ld.at("kodaira") == "III*");
  CHECK(ld.at("tamagawa") == 2);
  const auto g = nlohmann::json::parse(cli("localdata 38025.ck2").out);
  CHECK(g.at("conductor") == "38025");
  CHECK(g.at("min_discriminant_factored") == "3^6*5^9*13^9");

  const Run sel = cli("selmer " + kE1 + " --twist 17");
  CHECK(sel.exit == 0);
  const auto sj = nlohmann::json::parse(sel.out);
  CHECK(sj.at("elements") == nlohmann::json::array({1, 65}));
  CHECK(sj.at("classes").size() == 64);
  CHECK(nlohmann::json::parse(cli("selmer " + kE1 + " --twist 17 --direction phihat").out).at("dimension") == 1);

  const auto p = nlohmann::json::parse(cli("period " + kE1 + " --format json").out);
  CHECK(p.at("real_period").get<std::string>().rfind("0.2097217128", 0) == 0);
  CHECK(p.at("method") == "agm");

  const Run f = cli("fetch 38025.ck1");
  CHECK(f.exit == 0);
  const auto fj = nlohmann::json::parse(f.out);
  CHECK(fj.at("discrepancies").empty());
  CHECK(fj.at("record").at("conductor") == 38025);
}
