#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coarse/coarse_group.hpp"
#include "coarse/coarse_space.hpp"

namespace coarse {

/// n + 1 families of point sets covering the ground. Sets may be shared
/// across families but each family is checked for separation on its own.
struct Cover {
  std::vector<std::vector<PointSet>> families;
};

/// Least i with U inside E_i[u] for every set U and every u in U, or NONE.
/// Throws InvalidArgument on an empty set.
Scale uniformBoundScale(const Cover& cover, const CoarseSpace& x);

/// E[U] and V disjoint for all distinct U, V in the family.
bool separatedCheck(const std::vector<PointSet>& family, const Relation& e);

bool coversGround(const Cover& cover, std::size_t groundSize);

enum class CoverSource { IntervalTemplate, BrickTemplate, SquareTemplate, Greedy, Exact };
const char* toString(CoverSource s);

struct ScaleCover {
  std::size_t scale = 0;
  Scale boundScale;
  CoverSource source = CoverSource::Greedy;
  Cover cover;
};

enum class AsdimVerdict { Witness, ExhaustedExact, GaveUpHeuristic };
const char* toString(AsdimVerdict v);

struct AsdimOptions {
  /// Exact search runs only when the ground has at most this many points.
  std::size_t exactCap = 24;
  /// Largest admissible bound index; unset means any chain element.
  std::optional<std::size_t> boundCap;
  /// Search nodes per exact run before giving up.
  std::size_t nodeBudget = 2'000'000;
};

struct AsdimResult {
  std::size_t n = 0;
  AsdimVerdict verdict = AsdimVerdict::Witness;
  /// One entry per chain index while covers were found.
  std::vector<ScaleCover> perScale;
  /// First chain index with no cover, when the verdict is not Witness.
  std::optional<std::size_t> failedScale;
  bool ok() const { return verdict == AsdimVerdict::Witness; }
};

/// For every chain index i, looks for a cover by n + 1 E_i-separated families
/// with the smallest bound index it can reach. Tries templates, then greedy
/// first-fit, then exact search. Every cover is re-verified before it is
/// stored; a failed re-verification throws VerificationBug.
AsdimResult asdimUpperWitness(const CoarseSpace& x, std::size_t n, const AsdimOptions& options = {});

/// Whether some cover by n + 1 E_scale-separated families has every set
/// bounded by E_bound. Exhaustive; the ground must have at most 16 points.
bool asdimExactSmall(const CoarseSpace& x, std::size_t scale, std::size_t bound, std::size_t n);

/// Appends empty families up to n + 1.
Cover padCover(Cover cover, std::size_t n);

/// Images of every set under f.
Cover transportCover(const Cover& cover, const PointMap& f);

struct GroupAsdimReport {
  AsdimResult result;
  /// Each family also passes U and V S disjoint for S = I_i, checked through
  /// products of element sets.
  bool sDisjointAgrees = true;
  /// 0 for finite abelian groups, unset otherwise.
  std::optional<std::size_t> freeRank;
  bool ok() const { return result.ok() && sDisjointAgrees; }
};

/// Runs the engine on the left structure of the ideal.
GroupAsdimReport groupAsdimCheck(const FiniteGroup& g, const IdealChain& ideal, std::size_t n,
                                 const AsdimOptions& options = {});

}  // namespace coarse
