#pragma once

// Seeded random spaces and maps for property tests.

#include <algorithm>
#include <numeric>
#include <random>

#include "coarse/coarse_maps.hpp"
#include "support/oracle.hpp"

namespace testsys {

/// makeFiltered over one to three random generators of growing density.
inline coarse::CoarseSpace randomSpace(std::mt19937_64& rng, std::size_t n) {
  auto g = coarse::GroundSet::range(n);
  std::vector<coarse::Relation> gens;
  std::size_t k = 1 + rng() % 3;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(oracle::randomRelation(g, rng, 0.1 + 0.1 * i));
  if (rng() % 4 == 0) gens.insert(gens.begin(), coarse::Relation::diagonal(g));
  return coarse::makeFiltered(g, gens);
}

inline coarse::PointMap randomMap(std::mt19937_64& rng, const coarse::GroundSet& from, const coarse::GroundSet& to,
                                  bool bijective) {
  std::vector<std::size_t> a(from.size());
  if (bijective) {
    std::iota(a.begin(), a.end(), std::size_t{0});
    std::shuffle(a.begin(), a.end(), rng);
  } else {
    for (auto& t : a) t = rng() % to.size();
  }
  return coarse::PointMap(from, to, a);
}

}  // namespace testsys
