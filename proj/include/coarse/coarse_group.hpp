#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "coarse/coarse_maps.hpp"
#include "coarse/coarse_space.hpp"

namespace coarse {

/// A finite group given by its Cayley table over labelled elements.
/// The constructor checks closure, associativity, identity and inverses.
class FiniteGroup {
 public:
  FiniteGroup(GroundSet elements, std::vector<std::vector<std::size_t>> table);

  static FiniteGroup trivial();
  /// Z_n on labels "0".."n-1".
  static FiniteGroup cyclic(std::size_t n);
  /// Pairs "(a,b)" in a-major order with componentwise operation.
  static FiniteGroup directProduct(const FiniteGroup& a, const FiniteGroup& b);
  static FiniteGroup klein() { return directProduct(cyclic(2), cyclic(2)); }
  /// S_3 on labels e, (12), (13), (23), (123), (132); (st)(x) = s(t(x)).
  static FiniteGroup symmetric3();

  const GroundSet& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t op(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }

  bool isAbelian() const;

  PointSet identitySet() const { return PointSet(size(), {identity_}); }
  /// gH
  PointSet leftTranslate(std::size_t g, const PointSet& h) const;
  /// Hg
  PointSet rightTranslate(const PointSet& h, std::size_t g) const;
  /// HT
  PointSet productSet(const PointSet& h, const PointSet& t) const;
  /// H^-1
  PointSet inverseSet(const PointSet& h) const;
  bool isSubgroup(const PointSet& h) const;

 private:
  GroundSet elements_;
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// Normalized chain H_0 within ... within H_t of a group ideal: e in H_0,
/// every H_i inverse-closed, and H_t a subgroup, so each H_i H_j lies in H_t.
class IdealChain {
 public:
  const std::vector<PointSet>& sets() const { return sets_; }
  const PointSet& at(std::size_t i) const { return sets_.at(i); }
  std::size_t size() const { return sets_.size(); }
  const PointSet& top() const { return sets_.back(); }

 private:
  friend IdealChain validateIdealChain(const FiniteGroup& g, const std::vector<PointSet>& raw);
  friend IdealChain finitaryIdeal(const FiniteGroup& g);
  explicit IdealChain(std::vector<PointSet> sets) : sets_(std::move(sets)) {}
  std::vector<PointSet> sets_;
};

/// Replaces each H_i by H_i u H_i^-1 u {e}, takes prefix unions, then appends
/// top * top until it stops growing. An empty input gives ({e}).
IdealChain validateIdealChain(const FiniteGroup& g, const std::vector<PointSet>& raw);

/// Every finite subset is finite, so on a finite group this is ({e}, G),
/// the bounded structure. The trivial group gives ({e}).
IdealChain finitaryIdeal(const FiniteGroup& g);

/// Union over g of {g} x gH.
Relation leftEntourage(const FiniteGroup& g, const PointSet& h);
/// Union over g of {g} x Hg.
Relation rightEntourage(const FiniteGroup& g, const PointSet& h);

CoarseSpace leftStructure(const FiniteGroup& g, const IdealChain& ideal);
CoarseSpace rightStructure(const FiniteGroup& g, const IdealChain& ideal);

/// A left shift g and a pair of E_scale whose shifted copy escapes the top.
struct ShiftFailure {
  std::size_t scale = 0;
  std::size_t shift = 0;
  IndexPair pair;
};

using ShiftOutcome = std::variant<ControlFunction, ShiftFailure>;

/// For each chain index i, least j with G E_i inside E_j.
ShiftOutcome leftCoarseGroupCheck(const FiniteGroup& g, const CoarseSpace& x);

class NotCoarseGroup : public Error {
 public:
  NotCoarseGroup(const std::string& what, ShiftFailure f) : Error(what), failure(f) {}
  ShiftFailure failure;
};

/// H_i = E_i[e]. Throws NotCoarseGroup when the left-invariance check fails.
IdealChain idealFromStructure(const FiniteGroup& g, const CoarseSpace& x);

/// classify of g -> g^-1 from the left to the right structure of the ideal.
MapReport inversionAsymorphismCheck(const FiniteGroup& g, const IdealChain& ideal);

enum class WindowKind { Integer, Grid };

/// Lattice values k * step for |k * step| <= halfWidth, as a finite model
/// of Z or R with the metric |a - b|. The window is a coarse subspace, not
/// the group itself.
struct WindowedLine {
  WindowKind kind = WindowKind::Integer;
  double halfWidth = 0;
  double step = 1;
  /// Number of steps from 0 to the edge of the window.
  long reach = 0;
  std::vector<double> values;
};

/// Labels are shortest round-trip decimals ("-0.25", "3"). INTEGER ignores
/// step and uses 1. halfWidth must be a whole number of steps.
std::pair<WindowedLine, CoarseSpace> windowedLine(WindowKind kind, double halfWidth, double step,
                                                  const std::vector<double>& scales = {1, 2, 4, 8});

std::string formatNumber(double v);

struct UnifiedDemoReport {
  WindowedLine integers;
  WindowedLine grid;
  CoarseSpace integerSpace;
  CoarseSpace gridSpace;
  PointMap inclusion;
  PointMap floor;
  MapReport inclusionReport;
  MapReport floorReport;
  /// f = inclusion, g = floor.
  CoarseInverseReport inverse;
  bool floorAfterInclusionIsIdentity = false;
  /// Least grid chain index whose strip contains distance 1.
  Scale firstScaleContainingOne;

  bool ok() const {
    return floorAfterInclusionIsIdentity && inverse.ok() && inclusionReport.classes.coarseEquivalence &&
           floorReport.classes.coarseEquivalence;
  }
};

/// Inclusion of the integer window {-N..N} into the step-delta grid and the
/// floor map back. Requires delta <= 1 with 1/delta a whole number and N whole.
UnifiedDemoReport unifiedDemo(double halfWidth, double step, const std::vector<double>& scales = {1, 2, 4, 8});

}  // namespace coarse
