#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "coarse/dynamics.hpp"

namespace coarse::cli {

struct SizeBounds {
  std::size_t maxPoints = 8;
  std::size_t maxGroup = 6;
};

class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

/// A random system a with two relabelled copies b and c and the known
/// conjugacies a -> b and b -> c, all re-verified.
struct GeneratedInstance {
  std::uint64_t seed = 0;
  std::string groupName;
  bool setValued = false;
  SystemPtr a, b, c;
  std::optional<Conjugacy> ab, bc;
};

/// Per-instance seed derived from a corpus seed (splitmix64 of both).
std::uint64_t instanceSeed(std::uint64_t base, std::size_t index);

/// The group acts on a union of coset spaces G/H by left multiplication; the
/// metric is the maximum over G of a random metric, so every phi^g is an
/// isometry. Copies are relabelled through a random permutation of points
/// and a random automorphism of G. Throws GenerationExhausted after repeated
/// validation failures.
GeneratedInstance generateInstance(std::uint64_t seed, const SizeBounds& bounds = {});

}  // namespace coarse::cli
