// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "bsdtwins/descent.hpp"
#include "bsdtwins/localdata.hpp"
#include "bsdtwins/period.hpp"
#include "bsdtwins/torsion.hpp"

namespace bsdtwins {

enum class Verdict { Equal, NotEqual, Conditional };
std::string to_string(Verdict v);  // "EQUAL", "NOT-EQUAL", "CONDITIONAL"

/// Everything computed for one curve of the pair.
struct CurveSummary {
  std::string name;
  WeierstrassModel model;
  GlobalData global;
  Rat j;
  MordellWeilGroup mordell_weil;
  Interval rank;
  std::string regulator;  // "1" when rank 0 is proven, else "unknown"
  RealPeriod period;
  Interval sha2_dim;
};

/// One compared invariant.
struct ReportEntry {
  std::string invariant;  // "L-function", "Mordell-Weil", ...
  std::string verdict;    // "equal", "not-equal", "unknown", or a label
  std::string provenance;
  bool proven = false;
};

struct BsdReport {
  Int twist = 1;
  TwoIsogeny isogeny;  // between the twisted curves
  CurveSummary curve[2];
  SelmerGroup sel_phi;
  SelmerGroup sel_phihat;
  DescentVerdict descent;
  PeriodComparison period;
  RankParity parity = RankParity::Unknown;
  std::vector<ReportEntry> entries;
  bool non_isomorphic = false;
  Verdict overall = Verdict::Conditional;

  const ReportEntry* entry(const std::string& invariant) const;
};

struct ReportOptions {
  unsigned digits = 60;
  SelmerOptions selmer;
  std::string names[2] = {"E1", "E2"};
};

/// Full comparison of E1^D and E2^D. The inputs may be any models of a
/// 2-isogenous pair; they are brought to (A, B)-form first. Throws
/// NotIsogenous when no rational 2-isogeny links them.
BsdReport verify_pair(const WeierstrassModel& e1, const WeierstrassModel& e2, const Int& D,
                      const ReportOptions& opts = {});

/// The 2-isogeny from an (A, B)-form of e1 whose image is equivalent to an
/// (A, B)-form of e2.
TwoIsogeny link_pair(const WeierstrassModel& e1, const WeierstrassModel& e2);

enum class Format { Json, Table, Markdown };
Format parse_format(const std::string& name);

nlohmann::ordered_json to_json(const BsdReport& r);
std::string render(const BsdReport& r, Format f);

/// JSON records for the CLI subcommands.
nlohmann::ordered_json to_json(const SelmerGroup& g, const TwoIsogeny& iso);
nlohmann::ordered_json to_json(const LocalData& ld);

std::string factored(const Int& n);  // "-3^6*5^9*13^9"

}  // namespace bsdtwins
