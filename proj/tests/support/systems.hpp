#pragma once

// Small dynamical systems shared by several test binaries.

#include <cstdlib>
#include <memory>

#include "coarse/dynamics.hpp"

namespace testsys {

using namespace coarse;

/// Z_n with the cyclic distance min(|a-b|, n-|a-b|) at scales 1 and 2.
inline CoarseSpace cyclicSpace(std::size_t n) {
  DistanceMatrix d(n, std::vector<double>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t diff = a > b ? a - b : b - a;
      d[a][b] = static_cast<double>(std::min(diff, n - diff));
    }
  return fromMetric(GroundSet::range(n), d, {1, 2});
}

/// phi^g(m) = m + g mod n over the cyclic space, bounded ideal on Z_n.
inline SystemPtr rotation(std::size_t n) {
  auto g = FiniteGroup::cyclic(n);
  auto space = cyclicSpace(n);
  std::vector<PointMap> evo;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> to(n);
    for (std::size_t m = 0; m < n; ++m) to[m] = (m + s) % n;
    evo.emplace_back(space.ground(), space.ground(), to);
  }
  auto ideal = validateIdealChain(g, {g.elements().allPoints()});
  return std::make_shared<const CoarseDynamicalSystem>(space, TimeGroup(g, ideal), evo);
}

/// Every phi^g is the identity.
inline SystemPtr trivialOn(const CoarseSpace& space, const FiniteGroup& g = FiniteGroup::trivial()) {
  std::vector<PointMap> evo(g.size(), PointMap::identity(space.ground()));
  return std::make_shared<const CoarseDynamicalSystem>(space, TimeGroup(g, validateIdealChain(g, {})), evo);
}

/// m -> m + k mod n on Z_n.
inline PointMap shiftMap(const GroundSet& ground, std::size_t k) {
  std::vector<std::size_t> to(ground.size());
  for (std::size_t m = 0; m < to.size(); ++m) to[m] = (m + k) % to.size();
  return PointMap(ground, ground, to);
}

}  // namespace testsys
