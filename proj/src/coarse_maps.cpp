#include "coarse/coarse_maps.hpp"

#include <string>

namespace coarse {

PointMap::PointMap(GroundSet source, GroundSet target, std::vector<std::size_t> assignment)
    : source_(std::move(source)), target_(std::move(target)), to_(std::move(assignment)) {
  if (to_.size() != source_.size())
    throw InvalidArgument("map assigns " + std::to_string(to_.size()) + " points but the source has " +
                          std::to_string(source_.size()));
  for (std::size_t t : to_) target_.checkIndex(t);
}

PointMap PointMap::identity(const GroundSet& ground) {
  std::vector<std::size_t> to(ground.size());
  for (std::size_t i = 0; i < to.size(); ++i) to[i] = i;
  return PointMap(ground, ground, std::move(to));
}

PointMap PointMap::constant(const GroundSet& source, const GroundSet& target, std::size_t value) {
  return PointMap(source, target, std::vector<std::size_t>(source.size(), value));
}

PointMap PointMap::fromLabels(const GroundSet& source, const GroundSet& target,
                              const std::vector<std::pair<std::string, std::string>>& assign) {
  std::vector<std::optional<std::size_t>> seen(source.size());
  for (const auto& [from, to] : assign) {
    std::size_t a = source.indexOf(from);
    if (seen[a]) throw InvalidArgument("point '" + from + "' is assigned twice");
    seen[a] = target.indexOf(to);
  }
  std::vector<std::size_t> out(source.size());
  for (std::size_t a = 0; a < source.size(); ++a) {
    if (!seen[a]) throw InvalidArgument("map is not total: '" + source.label(a) + "' has no image");
    out[a] = *seen[a];
  }
  return PointMap(source, target, std::move(out));
}

bool PointMap::isInjective() const {
  PointSet hit(target_.size());
  for (std::size_t t : to_) {
    if (hit.contains(t)) return false;
    hit.insert(t);
  }
  return true;
}

bool PointMap::isSurjective() const { return imageOfAll().isFull(); }

PointSet PointMap::image(const PointSet& s) const {
  source_.checkSet(s);
  PointSet out(target_.size());
  s.forEach([&](std::size_t a) { out.insert(to_[a]); });
  return out;
}

PointSet PointMap::preimage(const PointSet& t) const {
  target_.checkSet(t);
  PointSet out(source_.size());
  for (std::size_t a = 0; a < to_.size(); ++a)
    if (t.contains(to_[a])) out.insert(a);
  return out;
}

PointSet PointMap::imageOfAll() const { return image(source_.allPoints()); }

PointMap composeMaps(const PointMap& g, const PointMap& f) {
  requireSameGround(f.target(), g.source(), "map composition");
  std::vector<std::size_t> out(f.source().size());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = g(f(a));
  return PointMap(f.source(), g.target(), std::move(out));
}

PointMap inverseMap(const PointMap& f) {
  if (!f.isBijective()) throw InvalidArgument("inverseMap: map is not bijective");
  std::vector<std::size_t> out(f.target().size());
  for (std::size_t a = 0; a < f.source().size(); ++a) out[f(a)] = a;
  return PointMap(f.target(), f.source(), std::move(out));
}

PointMap corestrictToImage(const PointMap& f) {
  const PointSet img = f.imageOfAll();
  std::vector<std::size_t> newIndex(f.target().size(), 0);
  std::size_t k = 0;
  img.forEach([&](std::size_t t) { newIndex[t] = k++; });
  GroundSet sub(f.target().labelsOf(img));
  std::vector<std::size_t> out(f.source().size());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = newIndex[f(a)];
  return PointMap(f.source(), std::move(sub), std::move(out));
}

Relation imageRelation(const PointMap& f, const Relation& e) {
  requireSameGround(f.source(), e.ground(), "imageRelation");
  Relation out(f.target());
  // Rows with equal content map to equal target rows; map each class once.
  RowPartition p = partitionRows(e);
  std::vector<PointSet> mapped;
  mapped.reserve(p.classCount());
  for (std::size_t rep : p.representative) mapped.push_back(f.image(e.row(rep)));
  for (std::size_t a = 0; a < e.pointCount(); ++a) out.row(f(a)) |= mapped[p.classOf[a]];
  return out;
}

namespace {

std::vector<PointSet> fibers(const PointMap& f) {
  std::vector<PointSet> out(f.target().size(), PointSet(f.source().size()));
  for (std::size_t a = 0; a < f.source().size(); ++a) out[f(a)].insert(a);
  return out;
}

}  // namespace

Relation preimageRelation(const PointMap& f, const Relation& e) {
  requireSameGround(f.target(), e.ground(), "preimageRelation");
  const auto fib = fibers(f);
  RowPartition p = partitionRows(e);
  // Row a of the preimage depends only on the class of row f(a) of e.
  std::vector<std::optional<PointSet>> pulled(p.classCount());
  Relation out(f.source());
  for (std::size_t a = 0; a < f.source().size(); ++a) {
    auto& slot = pulled[p.classOf[f(a)]];
    if (!slot) {
      slot.emplace(f.source().size());
      e.row(f(a)).forEach([&](std::size_t c) { *slot |= fib[c]; });
    }
    out.row(a) = *slot;
  }
  return out;
}

bool ControlFunction::isMonotone() const {
  for (std::size_t i = 1; i < table.size(); ++i)
    if (table[i] < table[i - 1]) return false;
  return true;
}

bool ControlFunction::boundedBy(const ControlFunction& other) const {
  if (table.size() != other.table.size()) return false;
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] > other.table[i]) return false;
  return true;
}

ControlFunction chainControls(const ControlFunction& inner, const ControlFunction& outer) {
  ControlFunction out;
  for (std::size_t j : inner.table) out.table.push_back(outer(j));
  return out;
}

Scale closenessScale(const PointMap& f, const PointMap& g, const CoarseSpace& y) {
  requireSameGround(f.source(), g.source(), "closenessScale");
  requireSameGround(f.target(), y.ground(), "closenessScale");
  requireSameGround(g.target(), y.ground(), "closenessScale");
  Relation pairs(y.ground());
  for (std::size_t k = 0; k < f.source().size(); ++k) pairs.insert(f(k), g(k));
  return membershipScale(y, pairs);
}

ControlOutcome bornologousControl(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  requireSameGround(f.source(), x.ground(), "bornologousControl");
  requireSameGround(f.target(), y.ground(), "bornologousControl");
  ControlFunction rho;
  for (std::size_t i = 0; i < x.scaleCount(); ++i) {
    Relation img = imageRelation(f, x.at(i));
    Scale s = membershipScale(y, img);
    if (s.isNone()) {
      IndexPair target = *img.firstPairOutside(y.top());
      const auto fib = fibers(f);
      for (std::size_t a : fib[target.first].members()) {
        std::size_t b = (x.at(i).row(a) & fib[target.second]).first();
        if (b < x.ground().size()) return ControlFailure{i, {a, b}, target};
      }
      throw VerificationBug("bornologousControl: image pair without a source pair");
    }
    rho.table.push_back(s.index());
  }
  return rho;
}

ControlOutcome effectivelyProperControl(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  requireSameGround(f.source(), x.ground(), "effectivelyProperControl");
  requireSameGround(f.target(), y.ground(), "effectivelyProperControl");
  ControlFunction sigma;
  for (std::size_t j = 0; j < y.scaleCount(); ++j) {
    Relation pre = preimageRelation(f, y.at(j));
    Scale s = membershipScale(x, pre);
    if (s.isNone()) {
      IndexPair source = *pre.firstPairOutside(x.top());
      return ControlFailure{j, source, {f(source.first), f(source.second)}};
    }
    sigma.table.push_back(s.index());
  }
  return sigma;
}

Scale isLarge(const PointSet& a, const CoarseSpace& x) {
  x.ground().checkSet(a);
  for (std::size_t i = 0; i < x.scaleCount(); ++i)
    if (image(x.at(i), a).isFull()) return Scale(i);
  return Scale::none();
}

MapReport classify(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  MapReport r{std::nullopt, bornologousControl(f, x, y), effectivelyProperControl(f, x, y), false, false,
              Scale::none(), MapClasses{}};
  if (f.source().sameAs(f.target())) r.closeScaleToIdentity = closenessScale(f, PointMap::identity(y.ground()), y);
  r.injective = f.isInjective();
  r.bijective = f.isBijective();
  r.largeImageScale = isLarge(f.imageOfAll(), y);
  auto& c = r.classes;
  c.bornologous = hasControl(r.bornologous);
  c.effectivelyProper = hasControl(r.effectivelyProper);
  bool both = c.bornologous && c.effectivelyProper;
  c.asymorphism = r.bijective && both;
  c.asymorphicEmbedding = r.injective && both;
  c.coarseEquivalence = both && !r.largeImageScale.isNone();
  return r;
}

CoarseInverseReport coarseInverseCheck(const PointMap& f, const PointMap& g, const CoarseSpace& x,
                                       const CoarseSpace& y) {
  requireSameGround(f.source(), g.target(), "coarseInverseCheck");
  requireSameGround(f.target(), g.source(), "coarseInverseCheck");
  return CoarseInverseReport{
      closenessScale(composeMaps(g, f), PointMap::identity(x.ground()), x),
      closenessScale(composeMaps(f, g), PointMap::identity(y.ground()), y),
      bornologousControl(f, x, y),
      bornologousControl(g, y, x),
  };
}

std::optional<PointMap> candidateCoarseInverse(const PointMap& f, const CoarseSpace& y) {
  requireSameGround(f.target(), y.ground(), "candidateCoarseInverse");
  const PointSet img = f.imageOfAll();
  std::vector<std::size_t> somePreimage(f.target().size(), 0);
  for (std::size_t a = f.source().size(); a-- > 0;) somePreimage[f(a)] = a;

  std::vector<std::size_t> out(y.ground().size());
  for (std::size_t t = 0; t < out.size(); ++t) {
    std::size_t hit = y.ground().size();
    for (std::size_t i = 0; i < y.scaleCount() && hit == y.ground().size(); ++i)
      hit = (y.at(i).row(t) & img).first();
    if (hit == y.ground().size()) return std::nullopt;
    out[t] = somePreimage[hit];
  }
  return PointMap(f.target(), f.source(), std::move(out));
}

bool isAsymorphismByInverse(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  if (!f.isBijective()) return false;
  return hasControl(bornologousControl(f, x, y)) && hasControl(bornologousControl(inverseMap(f), y, x));
}

bool isAsymorphismByControls(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  return f.isBijective() && hasControl(bornologousControl(f, x, y)) && hasControl(effectivelyProperControl(f, x, y));
}

bool isAsymorphicEmbeddingByRestriction(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  requireSameGround(f.target(), y.ground(), "isAsymorphicEmbeddingByRestriction");
  PointMap onto = corestrictToImage(f);
  return isAsymorphismByInverse(onto, x, subspace(y, f.imageOfAll()));
}

bool isAsymorphicEmbeddingByControls(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  return f.isInjective() && hasControl(bornologousControl(f, x, y)) &&
         hasControl(effectivelyProperControl(f, x, y));
}

bool isCoarseEquivalenceByInverse(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  if (!hasControl(bornologousControl(f, x, y))) return false;
  auto g = candidateCoarseInverse(f, y);
  return g && coarseInverseCheck(f, *g, x, y).ok();
}

bool isCoarseEquivalenceByControls(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y) {
  return hasControl(bornologousControl(f, x, y)) && hasControl(effectivelyProperControl(f, x, y)) &&
         !isLarge(f.imageOfAll(), y).isNone();
}

}  // namespace coarse
