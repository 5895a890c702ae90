#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "coarse/coarse_group.hpp"
#include "coarse/coarse_maps.hpp"

namespace coarse {

/// Set-valued operation table: products[g1][g2] is the element set g1 * g2.
using HyperTable = std::vector<std::vector<PointSet>>;

/// A finite group with a group ideal and an optionally set-valued operation.
/// Without a table the operation is the singleton of the Cayley product.
class TimeGroup {
 public:
  TimeGroup(FiniteGroup group, IdealChain ideal, std::optional<HyperTable> products = std::nullopt);

  const FiniteGroup& group() const { return group_; }
  const GroundSet& elements() const { return group_.elements(); }
  std::size_t size() const { return group_.size(); }
  const IdealChain& ideal() const { return ideal_; }
  /// Left structure generated by the ideal.
  const CoarseSpace& space() const { return space_; }
  bool setValued() const { return setValued_; }
  const PointSet& product(std::size_t a, std::size_t b) const { return products_[a][b]; }
  const HyperTable& products() const { return products_; }

 private:
  FiniteGroup group_;
  IdealChain ideal_;
  CoarseSpace space_;
  HyperTable products_;
  bool setValued_ = false;
};

/// A coarse space with a family of maps phi^g indexed by the time group.
/// The constructor checks shapes only; validateCDS checks the axioms.
class CoarseDynamicalSystem {
 public:
  CoarseDynamicalSystem(CoarseSpace space, TimeGroup time, std::vector<PointMap> evolution);

  const CoarseSpace& space() const { return space_; }
  const GroundSet& ground() const { return space_.ground(); }
  const TimeGroup& time() const { return time_; }
  const PointMap& phi(std::size_t g) const { return evolution_.at(g); }
  const std::vector<PointMap>& evolution() const { return evolution_; }

 private:
  CoarseSpace space_;
  TimeGroup time_;
  std::vector<PointMap> evolution_;
};

using SystemPtr = std::shared_ptr<const CoarseDynamicalSystem>;

/// Same space, time group, operation and evolution tables.
bool sameSystem(const CoarseDynamicalSystem& a, const CoarseDynamicalSystem& b);

struct CDSViolation {
  enum class Kind { Identity, NotAsymorphism, Composition };
  Kind kind;
  std::size_t g1 = 0;
  std::size_t g2 = 0;
  std::size_t point = 0;
  std::string describe(const CoarseDynamicalSystem& sys) const;
};

struct CDSReport {
  /// Bornologous and effectively proper controls of each phi^g.
  std::vector<ControlFunction> bornologous;
  std::vector<ControlFunction> effectivelyProper;
  /// phi^g1 o phi^g2 = phi^(g1 g2) as tables (only meaningful in singleton mode).
  bool exactAction = false;
  std::optional<CDSViolation> violation;
  bool ok() const { return !violation; }
};

/// Checks phi^e = id, that every phi^g is an asymorphism, and the pointwise
/// composition axiom phi^g1(phi^g2(m)) in {phi^g(m) : g in g1 * g2}.
CDSReport validateCDS(const CoarseDynamicalSystem& sys);

struct Orbit {
  PointSet points;
  CoarseSpace space;
};

/// {phi^g(m) : g in G} with its subspace structure.
Orbit orbit(const CoarseDynamicalSystem& sys, std::size_t m);

class Conjugacy;

struct ConjugacyFailure {
  enum class Clause { SpaceAsymorphism, TimeAsymorphism, Homomorphism, Intertwining };
  Clause clause;
  /// Witness indices: elements g1, g2 for the homomorphism clause; g and
  /// point for intertwining.
  std::size_t g1 = 0;
  std::size_t g2 = 0;
  std::size_t point = 0;
  std::string detail;
};

const char* toString(ConjugacyFailure::Clause c);

using ConjugacyOutcome = std::variant<Conjugacy, ConjugacyFailure>;

/// A verified pair (f, h). Values exist only through checkConjugacy.
class Conjugacy {
 public:
  const CoarseDynamicalSystem& from() const { return *from_; }
  const CoarseDynamicalSystem& to() const { return *to_; }
  const SystemPtr& fromPtr() const { return from_; }
  const SystemPtr& toPtr() const { return to_; }
  const PointMap& f() const { return f_; }
  const PointMap& h() const { return h_; }
  const MapReport& fReport() const { return fReport_; }
  const MapReport& hReport() const { return hReport_; }

 private:
  friend ConjugacyOutcome checkConjugacy(SystemPtr, SystemPtr, PointMap, PointMap);
  Conjugacy(SystemPtr from, SystemPtr to, PointMap f, PointMap h, MapReport fr, MapReport hr)
      : from_(std::move(from)), to_(std::move(to)), f_(std::move(f)), h_(std::move(h)),
        fReport_(std::move(fr)), hReport_(std::move(hr)) {}
  SystemPtr from_, to_;
  PointMap f_, h_;
  MapReport fReport_, hReport_;
};

/// Verifies in order: (a) f is an asymorphism of spaces, (b) h is an
/// asymorphism of the ideal-generated time groups, (c) h(g1 * g2) =
/// h(g1) * h(g2) as element sets, (d) f o phi^g = phi~^h(g) o f pointwise.
ConjugacyOutcome checkConjugacy(SystemPtr a, SystemPtr b, PointMap f, PointMap h);

inline bool isConjugacy(const ConjugacyOutcome& o) { return std::holds_alternative<Conjugacy>(o); }

Conjugacy identityConjugacy(const SystemPtr& sys);
/// (f^-1, h^-1), re-verified. Throws VerificationBug if that fails.
Conjugacy inverseConjugacy(const Conjugacy& c);
/// (k o f, l o h) from c1 : A -> B and c2 : B -> C, re-verified.
Conjugacy composeConjugacy(const Conjugacy& c1, const Conjugacy& c2);

struct OrbitPreservation {
  PointSet imageOfOrbit;  // f(O(m))
  PointSet orbitOfImage;  // O~(f(m))
  bool holds() const { return imageOfOrbit == orbitOfImage; }
};

OrbitPreservation orbitPreservationCheck(const Conjugacy& c, std::size_t m);

/// Elements "((1,g),(2,g~))" with the componentwise operation; the ideal is
/// the product of the two ideals, the shorter chain padded with its top.
TimeGroup coproductTimeGroup(const TimeGroup& a, const TimeGroup& b);
/// Coproduct space, coproduct time group, evolution acting by tag.
/// Throws VerificationBug if the result fails validateCDS while both inputs pass.
SystemPtr coproductCDS(const SystemPtr& a, const SystemPtr& b);
/// (f u k, h u l) between coproductCDS(A, B) and coproductCDS(A~, B~).
Conjugacy coproductConjugacy(const Conjugacy& c1, const Conjugacy& c2);

class NotInvariant : public Error {
 public:
  NotInvariant(const std::string& what, std::size_t g, std::size_t point) : Error(what), g(g), point(point) {}
  std::size_t g;
  std::size_t point;
};

/// Restriction to points n and subgroup h. The ideal is intersected with h
/// and the set-valued products with h (each must stay nonempty). Throws
/// NotInvariant when some phi^g with g in h moves a point out of n.
CoarseDynamicalSystem subCDS(const CoarseDynamicalSystem& sys, const PointSet& n, const PointSet& h);

}  // namespace coarse
