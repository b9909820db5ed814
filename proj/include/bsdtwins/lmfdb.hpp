// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <filesystem>
#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "bsdtwins/localdata.hpp"
#include "bsdtwins/period.hpp"
#include "bsdtwins/torsion.hpp"

namespace bsdtwins {

/// Schema tag written into every cached record.
inline constexpr const char* kFixtureSchema = "bsdtwins-lmfdb/1";

struct CurveRecord {
  std::string label;
  std::array<Int, 5> ainvs;
  Int conductor;
  Int min_discriminant;  // signed
  std::vector<long> torsion_structure;  // [] for trivial, [2], [2, 4], ...
  std::map<Int, long> tamagawa;         // bad primes
  std::map<Int, std::string> kodaira;   // "I0*", "III*", ...
  std::string real_period;              // decimal as printed by the source
  Rat j;

  WeierstrassModel model() const { return WeierstrassModel::from_ainvs(ainvs); }
  bool operator==(const CurveRecord&) const = default;
};

nlohmann::ordered_json to_json(const CurveRecord& r);
CurveRecord record_from_json(const nlohmann::json& j);

/// "<conductor>.<class letters><index>", e.g. "38025.ck1".
bool valid_label(const std::string& label);

/// Kodaira code used by the LMFDB and PARI (1 = I0, 2 = II, 4 + n = In,
/// -1 = I0*, -4 - n = In*, ...) to a symbol.
KodairaSymbol kodaira_from_code(long code);

struct ClientOptions {
  std::filesystem::path cache_dir;
  bool online = false;
  std::string host = "https://www.lmfdb.org";
  int timeout_seconds = 20;
};

class LmfdbClient {
 public:
  explicit LmfdbClient(ClientOptions opts);

  /// Cached record, or (online only) an API lookup that is then cached.
  /// Throws UnknownLabel, NetworkUnavailable, InvalidInput.
  CurveRecord fetch(const std::string& label);

  long network_calls() const { return network_calls_; }
  std::filesystem::path cache_path(const std::string& label) const;

 private:
  CurveRecord download(const std::string& label);

  ClientOptions opts_;
  long network_calls_ = 0;
};

struct Discrepancy {
  std::string field;
  std::string expected;
  std::string computed;
};

/// Field-by-field comparison of a record with computed invariants; the
/// period is compared to the number of digits the record prints.
std::vector<Discrepancy> crosscheck(const CurveRecord& rec, const GlobalData& g,
                                    const TorsionGroup& torsion, const RealPeriod& period,
                                    const Rat& j);

/// Runs the pipeline on rec.ainvs and compares.
std::vector<Discrepancy> crosscheck(const CurveRecord& rec);

}  // namespace bsdtwins
