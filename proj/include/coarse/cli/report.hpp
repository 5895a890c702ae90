#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarse/asdim.hpp"
#include "coarse/dynamics.hpp"

namespace coarse::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportVersion = "1";

struct CheckRecord {
  std::string check;
  std::string input;
  bool pass = false;
  Json details = Json::object();
  double wallMs = 0;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  bool allPass() const;
  /// Stable order by check name, then input name.
  void sort();
};

Json toJson(const Report& r, bool timings);
std::string renderJson(const Report& r, bool timings);
/// One "PASS|FAIL check input" line per record.
std::string renderText(const Report& r, bool timings);

// Witness encoders shared by the commands.
Json labelsJson(const GroundSet& g, const PointSet& s);
Json pairJson(const GroundSet& a, const GroundSet& b, IndexPair p);
Json controlJson(const ControlOutcome& c, const PointMap& f);
Json scaleJson(Scale s);
Json mapReportJson(const MapReport& r, const PointMap& f);
Json cdsReportJson(const CDSReport& r, const CoarseDynamicalSystem& sys);
Json conjugacyFailureJson(const ConjugacyFailure& f);
Json asdimJson(const AsdimResult& r, const CoarseSpace& x);

}  // namespace coarse::cli
