#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "coarse/dynamics.hpp"

namespace coarse::cli {

/// Parse errors, dangling references and constructor rejections.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

struct SpaceEntry {
  GroundSet ground;
  /// Unset when the given chain is not normalized; violation says why.
  std::optional<CoarseSpace> space;
  std::optional<ChainViolation> violation;
  std::string kind;  // chain, metric, discrete, bounded, window
};

struct GroupEntry {
  FiniteGroup group;
  IdealChain ideal;
};

struct MapEntry {
  std::string from, to;
  PointMap map;
};

struct SystemEntry {
  std::string space, group;
  SystemPtr system;
};

struct ConjugacyEntry {
  std::string fromSystem, toSystem;
  PointMap f, h;
};

/// Named objects of one scenario file. Windows also appear among the spaces.
struct Scenario {
  std::uint64_t seed = 0;
  std::map<std::string, SpaceEntry> spaces;
  std::map<std::string, WindowedLine> windows;
  std::map<std::string, GroupEntry> groups;
  std::map<std::string, MapEntry> maps;
  std::map<std::string, SystemEntry> systems;
  std::map<std::string, ConjugacyEntry> conjugacies;

  /// Throws ScenarioError for unknown names and for invalid chains.
  const CoarseSpace& space(const std::string& name) const;
  const SystemEntry& system(const std::string& name) const;
};

/// JSON text with arrays of named objects under spaces, windows, groups,
/// maps, systems and conjugacies, plus an optional integer seed.
Scenario parseScenario(const std::string& text, const std::string& sourceName = "<scenario>");
Scenario loadScenario(const std::string& path);

}  // namespace coarse::cli
