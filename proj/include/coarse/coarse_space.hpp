#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "coarse/errors.hpp"
#include "coarse/relation.hpp"
#include "coarse/scale.hpp"

namespace coarse {

enum class Provenance { Metric, Discrete, Bounded, Derived };

const char* toString(Provenance p);

/// Coordinates of a space that came from a line metric |x - y| or a product
/// of two such lines (sup metric). radius[i] is the strip width of chain
/// element i, absent for elements appended by normalization.
struct Geometry {
  std::size_t dimension = 1;
  std::vector<std::array<double, 2>> coords;
  std::vector<std::optional<double>> radius;
};

/// Why a candidate chain is not a normalized coarse-structure base.
struct ChainViolation {
  enum class Kind { Empty, GroundMismatch, MissingDiagonal, NotSymmetric, NotMonotone, NotCompositionClosed };
  Kind kind;
  std::size_t index = 0;
  std::optional<IndexPair> pair;

  std::string describe(const GroundSet& ground) const;
};

/// Checks the four chain invariants: diagonal in E_0, every E_i symmetric,
/// E_i within E_{i+1}, and every E_i o E_j inside some chain element.
std::optional<ChainViolation> checkChain(const GroundSet& ground, const std::vector<Relation>& chain);

/// Thrown when a chain handed to a strict constructor is not normalized.
class InvalidChain : public Error {
 public:
  InvalidChain(const GroundSet& ground, ChainViolation v)
      : Error("invalid coarse chain: " + v.describe(ground)), violation(std::move(v)) {}
  ChainViolation violation;
};

/// A finite coarse space: a ground set plus a monotone, symmetric,
/// composition-closed chain E_0 within ... within E_k with the diagonal in
/// E_0. The represented coarse structure is every subset of some E_i.
class CoarseSpace {
 public:
  /// Strict constructor: throws InvalidChain unless the chain is normalized.
  CoarseSpace(GroundSet ground, std::vector<Relation> chain, Provenance provenance = Provenance::Derived,
              std::optional<Geometry> geometry = std::nullopt);

  const GroundSet& ground() const { return ground_; }
  const std::vector<Relation>& chain() const { return chain_; }
  const Relation& at(std::size_t i) const { return chain_.at(i); }
  std::size_t scaleCount() const { return chain_.size(); }
  std::size_t topIndex() const { return chain_.size() - 1; }
  const Relation& top() const { return chain_.back(); }
  Provenance provenance() const { return provenance_; }
  const std::optional<Geometry>& geometry() const { return geometry_; }

  /// Strip width of chain element i when the space carries line geometry.
  std::optional<double> radius(std::size_t i) const;

 private:
  GroundSet ground_;
  std::vector<Relation> chain_;
  Provenance provenance_;
  std::optional<Geometry> geometry_;
};

/// Normalizes generators into a chain: each generator becomes E u E^-1 u diag,
/// element i is the union of the first i+1 of those, and the fixed point of
/// composing the top with itself is appended when it differs from the top.
CoarseSpace makeFiltered(const GroundSet& ground, const std::vector<Relation>& generators,
                         Provenance provenance = Provenance::Derived, std::optional<Geometry> geometry = std::nullopt);

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

/// Row-major |M| x |M| distances; kInfiniteDistance is allowed.
using DistanceMatrix = std::vector<std::vector<double>>;

class MetricViolation : public Error {
 public:
  MetricViolation(const std::string& what, std::array<std::size_t, 3> witness)
      : Error(what), witness(witness) {}
  std::array<std::size_t, 3> witness;
};

/// Metric coarse structure: chain element per scale r is the open strip
/// {(a, b) : d(a, b) < r}. Throws MetricViolation with a witnessing triple.
CoarseSpace fromMetric(const GroundSet& ground, const DistanceMatrix& dist, const std::vector<double>& scales);

/// Metric coarse structure of points on a line with d(a, b) = |x_a - x_b|.
/// Coordinates must be strictly increasing; strips are built as index ranges.
CoarseSpace fromLine(const GroundSet& ground, const std::vector<double>& coords, const std::vector<double>& scales);

CoarseSpace discrete(const GroundSet& ground);
CoarseSpace bounded(const GroundSet& ground);

/// Least i with e inside E_i, or NONE.
Scale membershipScale(const CoarseSpace& x, const Relation& e);

/// Subspace structure on n (labels keep their order in x).
CoarseSpace subspace(const CoarseSpace& x, const PointSet& n);
/// Product structure on labels "(a,b)", a-major order.
CoarseSpace product(const CoarseSpace& x, const CoarseSpace& y);
/// Coproduct structure on labels "(1,a)" then "(2,b)".
CoarseSpace coproduct(const CoarseSpace& x, const CoarseSpace& y);

/// Index of point (a, b) in product(x, y)'s ground set.
inline std::size_t productIndex(std::size_t a, std::size_t b, std::size_t ySize) { return a * ySize + b; }

/// Same represented coarse structure: every relation is an entourage of both
/// or of neither. On finite spaces this is equality of the chain tops.
bool sameCoarseStructure(const CoarseSpace& x, const CoarseSpace& y);
/// membershipScale agrees on every relation. Chains may differ by repeated
/// or trailing duplicate elements.
bool sameFiltration(const CoarseSpace& x, const CoarseSpace& y);

}  // namespace coarse
