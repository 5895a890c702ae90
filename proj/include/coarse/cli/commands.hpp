#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarse/cli/report.hpp"
#include "coarse/cli/scenario.hpp"
#include "coarse/hyperspace.hpp"

namespace coarse::cli {

/// Unknown command or missing flag.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct CommandOptions {
  std::optional<std::string> scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> count;
  /// corpus: run only this instance index.
  std::optional<std::size_t> instance;
  std::size_t exactCap = 24;
  std::size_t hyperCap = kHyperCap;
  std::optional<std::string> space;
  std::optional<std::size_t> n;
  std::optional<double> halfWidth;
  std::optional<double> step;
  std::vector<double> scales{1, 2, 4, 8};
  /// Worker threads for independent checks; 0 picks the hardware count.
  std::size_t threads = 0;
};

const std::vector<std::string>& commandNames();

/// Dispatches one command. Records come back sorted by check, then input.
Report runCommand(const std::string& command, const CommandOptions& options);

/// Ground sets up to this size get the hyperspace suite in the corpus.
inline constexpr std::size_t kCorpusHyperLimit = 6;
/// Random maps per eligible corpus instance for the exp biconditionals.
inline constexpr std::size_t kCorpusExpMaps = 2;

/// The theorem suite on one generated instance.
CheckRecord corpusInstance(std::uint64_t corpusSeed, std::size_t index, std::size_t count, std::size_t hyperCap);

}  // namespace coarse::cli
