#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "coarse/coarse_space.hpp"

namespace coarse {

/// A total map between two finite ground sets.
class PointMap {
 public:
  PointMap(GroundSet source, GroundSet target, std::vector<std::size_t> assignment);

  static PointMap identity(const GroundSet& ground);
  static PointMap constant(const GroundSet& source, const GroundSet& target, std::size_t value);
  /// Every source label must appear exactly once.
  static PointMap fromLabels(const GroundSet& source, const GroundSet& target,
                             const std::vector<std::pair<std::string, std::string>>& assign);

  const GroundSet& source() const { return source_; }
  const GroundSet& target() const { return target_; }
  const std::vector<std::size_t>& assignment() const { return to_; }
  std::size_t operator()(std::size_t a) const { return to_[a]; }

  bool isInjective() const;
  bool isSurjective() const;
  bool isBijective() const { return source_.size() == target_.size() && isInjective(); }

  PointSet image(const PointSet& s) const;
  PointSet preimage(const PointSet& t) const;
  PointSet imageOfAll() const;

  friend bool operator==(const PointMap& a, const PointMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.to_ == b.to_;
  }

 private:
  GroundSet source_;
  GroundSet target_;
  std::vector<std::size_t> to_;
};

/// g o f. Requires f.target() == g.source().
PointMap composeMaps(const PointMap& g, const PointMap& f);
/// Inverse of a bijection; throws InvalidArgument otherwise.
PointMap inverseMap(const PointMap& f);
/// Corestriction of f onto its image, with the image labels in target order.
PointMap corestrictToImage(const PointMap& f);

/// (f x f)(E) on the target ground.
Relation imageRelation(const PointMap& f, const Relation& e);
/// (f x f)^-1(F) on the source ground.
Relation preimageRelation(const PointMap& f, const Relation& e);

/// Finite witness for "for every entourage E_i there is F_{table[i]}".
struct ControlFunction {
  std::vector<std::size_t> table;

  std::size_t operator()(std::size_t i) const { return table.at(i); }
  bool isMonotone() const;
  /// Pointwise bound: table[i] <= other.table[i].
  bool boundedBy(const ControlFunction& other) const;
  friend bool operator==(const ControlFunction&, const ControlFunction&) = default;
};

/// ControlFunction then another: i -> outer(inner(i)).
ControlFunction chainControls(const ControlFunction& inner, const ControlFunction& outer);

/// A chain element whose image (or preimage) is not an entourage. sourcePair
/// and targetPair are related by f x f; the offending pair lies outside the
/// top of the space that should contain it.
struct ControlFailure {
  std::size_t scale = 0;
  IndexPair sourcePair;
  IndexPair targetPair;
};

using ControlOutcome = std::variant<ControlFunction, ControlFailure>;

inline bool hasControl(const ControlOutcome& c) { return std::holds_alternative<ControlFunction>(c); }
inline const ControlFunction& control(const ControlOutcome& c) { return std::get<ControlFunction>(c); }

/// membershipScale of {(f(k), g(k))} in y.
Scale closenessScale(const PointMap& f, const PointMap& g, const CoarseSpace& y);

/// rho(i) = least j with (f x f)(E_i) inside F_j.
ControlOutcome bornologousControl(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);
/// sigma(j) = least i with (f x f)^-1(F_j) inside E_i.
ControlOutcome effectivelyProperControl(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);

/// Least i with E_i[a] = ground, or NONE.
Scale isLarge(const PointSet& a, const CoarseSpace& x);

struct MapClasses {
  bool bornologous = false;
  bool effectivelyProper = false;
  bool asymorphism = false;
  bool asymorphicEmbedding = false;
  bool coarseEquivalence = false;
};

struct MapReport {
  /// Closeness of f to the identity when source and target share a ground.
  std::optional<Scale> closeScaleToIdentity;
  ControlOutcome bornologous;
  ControlOutcome effectivelyProper;
  bool bijective = false;
  bool injective = false;
  Scale largeImageScale;
  MapClasses classes;
};

MapReport classify(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);

struct CoarseInverseReport {
  Scale backAndForth;  // g o f against id_X
  Scale forthAndBack;  // f o g against id_Y
  ControlOutcome fControl;
  ControlOutcome gControl;
  bool ok() const {
    return !backAndForth.isNone() && !forthAndBack.isNone() && hasControl(fControl) && hasControl(gControl);
  }
};

CoarseInverseReport coarseInverseCheck(const PointMap& f, const PointMap& g, const CoarseSpace& x,
                                       const CoarseSpace& y);

/// A map g : Y -> X sending each y to a point whose image lies in the
/// smallest chain ball around y. Absent when f(X) is not large.
std::optional<PointMap> candidateCoarseInverse(const PointMap& f, const CoarseSpace& y);

// Each definition variant has its own checker; none is derived from another.

/// f bijective, f and f^-1 bornologous.
bool isAsymorphismByInverse(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);
/// f bijective, bornologous and effectively proper.
bool isAsymorphismByControls(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);
/// The corestriction of f onto f(X) with the subspace structure is an
/// asymorphism (checked through the inverse variant).
bool isAsymorphicEmbeddingByRestriction(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);
/// f injective, bornologous and effectively proper.
bool isAsymorphicEmbeddingByControls(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);
/// f bornologous and the constructed candidate inverse passes coarseInverseCheck.
bool isCoarseEquivalenceByInverse(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);
/// f bornologous, effectively proper, with large image.
bool isCoarseEquivalenceByControls(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y);

}  // namespace coarse
