#include "coarse/coarse_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace coarse {

const char* toString(Provenance p) {
  switch (p) {
    case Provenance::Metric: return "metric";
    case Provenance::Discrete: return "discrete";
    case Provenance::Bounded: return "bounded";
    case Provenance::Derived: return "derived";
  }
  return "derived";
}

std::string ChainViolation::describe(const GroundSet& ground) const {
  auto pairText = [&]() -> std::string {
    if (!pair) return "";
    return " at pair (" + ground.label(pair->first) + ", " + ground.label(pair->second) + ")";
  };
  switch (kind) {
    case Kind::Empty: return "chain is empty";
    case Kind::GroundMismatch: return "element " + std::to_string(index) + " lives on another ground set";
    case Kind::MissingDiagonal: return "diagonal not contained in element 0" + pairText();
    case Kind::NotSymmetric: return "element " + std::to_string(index) + " is not symmetric" + pairText();
    case Kind::NotMonotone:
      return "element " + std::to_string(index) + " not contained in element " + std::to_string(index + 1) + pairText();
    case Kind::NotCompositionClosed:
      return "top o top escapes the chain (element " + std::to_string(index) + ")" + pairText();
  }
  return "unknown violation";
}

std::optional<ChainViolation> checkChain(const GroundSet& ground, const std::vector<Relation>& chain) {
  using Kind = ChainViolation::Kind;
  if (chain.empty()) return ChainViolation{Kind::Empty, 0, std::nullopt};
  for (std::size_t i = 0; i < chain.size(); ++i)
    if (!chain[i].ground().sameAs(ground)) return ChainViolation{Kind::GroundMismatch, i, std::nullopt};

  if (auto p = Relation::diagonal(ground).firstPairOutside(chain[0]))
    return ChainViolation{Kind::MissingDiagonal, 0, p};
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (auto p = inverse(chain[i]).firstPairOutside(chain[i])) {
      // p is (b, a) with (a, b) in E_i but (b, a) not.
      return ChainViolation{Kind::NotSymmetric, i, IndexPair{p->second, p->first}};
    }
  }
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (auto p = chain[i].firstPairOutside(chain[i + 1])) return ChainViolation{Kind::NotMonotone, i, p};

  // With a monotone chain, E_i o E_j lies in E_m o E_m for m = max(i, j), so
  // closure under composition reduces to transitivity of the top element.
  const Relation& top = chain.back();
  if (auto p = compose(top, top).firstPairOutside(top))
    return ChainViolation{Kind::NotCompositionClosed, chain.size() - 1, p};
  return std::nullopt;
}

CoarseSpace::CoarseSpace(GroundSet ground, std::vector<Relation> chain, Provenance provenance,
                         std::optional<Geometry> geometry)
    : ground_(std::move(ground)), chain_(std::move(chain)), provenance_(provenance), geometry_(std::move(geometry)) {
  if (auto v = checkChain(ground_, chain_)) throw InvalidChain(ground_, *v);
  if (geometry_) {
    if (geometry_->coords.size() != ground_.size())
      throw InvalidArgument("geometry has " + std::to_string(geometry_->coords.size()) + " coordinates for " +
                            std::to_string(ground_.size()) + " points");
    geometry_->radius.resize(chain_.size());
  }
}

std::optional<double> CoarseSpace::radius(std::size_t i) const {
  if (!geometry_ || i >= geometry_->radius.size()) return std::nullopt;
  return geometry_->radius[i];
}

CoarseSpace makeFiltered(const GroundSet& ground, const std::vector<Relation>& generators, Provenance provenance,
                         std::optional<Geometry> geometry) {
  if (generators.empty()) throw InvalidArgument("makeFiltered needs at least one generator");
  for (const auto& g : generators) requireSameGround(ground, g.ground(), "makeFiltered");

  const Relation diag = Relation::diagonal(ground);
  std::vector<Relation> chain;
  chain.reserve(generators.size() + 1);
  for (const auto& g : generators) {
    Relation normalized = unionOf(unionOf(g, inverse(g)), diag);
    if (!chain.empty()) normalized = unionOf(chain.back(), normalized);
    chain.push_back(std::move(normalized));
  }
  // Repeated self-composition of a reflexive symmetric relation stabilizes at
  // its equivalence closure; only that fixed point is appended.
  Relation closure = equivalenceClosure(chain.back());
  if (!(closure == chain.back())) chain.push_back(std::move(closure));
  return CoarseSpace(ground, std::move(chain), provenance, std::move(geometry));
}

namespace {

void checkScales(const std::vector<double>& scales) {
  if (scales.empty()) throw InvalidArgument("metric structure needs at least one scale");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0) || !std::isfinite(scales[i]))
      throw InvalidArgument("scale " + std::to_string(scales[i]) + " is not a positive real");
    if (i > 0 && !(scales[i] > scales[i - 1])) throw InvalidArgument("scales must be strictly ascending");
  }
}

}  // namespace

CoarseSpace fromMetric(const GroundSet& ground, const DistanceMatrix& dist, const std::vector<double>& scales) {
  checkScales(scales);
  const std::size_t n = ground.size();
  if (dist.size() != n) throw InvalidArgument("distance matrix row count differs from ground size");
  for (const auto& row : dist)
    if (row.size() != n) throw InvalidArgument("distance matrix is not square");

  auto label = [&](std::size_t i) { return ground.label(i); };
  for (std::size_t a = 0; a < n; ++a) {
    if (dist[a][a] != 0) throw MetricViolation("d(" + label(a) + "," + label(a) + ") is not zero", {a, a, a});
    for (std::size_t b = 0; b < n; ++b) {
      if (std::isnan(dist[a][b]) || dist[a][b] < 0)
        throw MetricViolation("d(" + label(a) + "," + label(b) + ") is not a non-negative extended real", {a, b, b});
      if (dist[a][b] != dist[b][a])
        throw MetricViolation("d is not symmetric at (" + label(a) + "," + label(b) + ")", {a, b, a});
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        double via = dist[a][c] + dist[c][b];
        if (std::isinf(via)) continue;
        double tol = 1e-9 * std::max(1.0, via);
        if (dist[a][b] > via + tol)
          throw MetricViolation("triangle inequality fails: d(" + label(a) + "," + label(b) + ") > d(" + label(a) +
                                    "," + label(c) + ") + d(" + label(c) + "," + label(b) + ")",
                                {a, b, c});
      }

  std::vector<Relation> strips;
  for (double r : scales) {
    Relation s(ground);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (dist[a][b] < r) s.insert(a, b);
    strips.push_back(std::move(s));
  }
  return makeFiltered(ground, strips, Provenance::Metric);
}

CoarseSpace fromLine(const GroundSet& ground, const std::vector<double>& coords, const std::vector<double>& scales) {
  checkScales(scales);
  const std::size_t n = ground.size();
  if (coords.size() != n) throw InvalidArgument("one coordinate per point required");
  for (std::size_t i = 1; i < n; ++i)
    if (!(coords[i] > coords[i - 1])) throw InvalidArgument("line coordinates must be strictly increasing");

  std::vector<Relation> strips;
  for (double r : scales) {
    Relation s(ground);
    for (std::size_t a = 0; a < n; ++a) {
      auto lo = std::upper_bound(coords.begin(), coords.end(), coords[a] - r);
      auto hi = std::lower_bound(coords.begin(), coords.end(), coords[a] + r);
      s.row(a).insertRange(static_cast<std::size_t>(lo - coords.begin()), static_cast<std::size_t>(hi - coords.begin()));
    }
    strips.push_back(std::move(s));
  }
  Geometry geo;
  geo.dimension = 1;
  geo.coords.reserve(n);
  for (double x : coords) geo.coords.push_back({x, 0.0});
  geo.radius.assign(scales.begin(), scales.end());
  return makeFiltered(ground, strips, Provenance::Metric, std::move(geo));
}

CoarseSpace discrete(const GroundSet& ground) {
  return CoarseSpace(ground, {Relation::diagonal(ground)}, Provenance::Discrete);
}

CoarseSpace bounded(const GroundSet& ground) {
  return CoarseSpace(ground, {Relation::full(ground)}, Provenance::Bounded);
}

Scale membershipScale(const CoarseSpace& x, const Relation& e) {
  requireSameGround(x.ground(), e.ground(), "membershipScale");
  for (std::size_t i = 0; i < x.scaleCount(); ++i)
    if (e.isSubsetOf(x.at(i))) return Scale(i);
  return Scale::none();
}

CoarseSpace subspace(const CoarseSpace& x, const PointSet& n) {
  x.ground().checkSet(n);
  const std::vector<std::size_t> members = n.members();
  std::vector<std::size_t> newIndex(x.ground().size(), 0);
  std::vector<std::string> labels;
  labels.reserve(members.size());
  for (std::size_t k = 0; k < members.size(); ++k) {
    newIndex[members[k]] = k;
    labels.push_back(x.ground().label(members[k]));
  }
  GroundSet sub(std::move(labels));

  std::vector<Relation> chain;
  for (const auto& e : x.chain()) {
    Relation r(sub);
    for (std::size_t k = 0; k < members.size(); ++k)
      (e.row(members[k]) & n).forEach([&](std::size_t b) { r.insert(k, newIndex[b]); });
    chain.push_back(std::move(r));
  }
  std::optional<Geometry> geo;
  if (x.geometry()) {
    geo = Geometry{x.geometry()->dimension, {}, x.geometry()->radius};
    for (auto m : members) geo->coords.push_back(x.geometry()->coords[m]);
  }
  return makeFiltered(sub, chain, Provenance::Derived, std::move(geo));
}

CoarseSpace product(const CoarseSpace& x, const CoarseSpace& y) {
  const std::size_t nx = x.ground().size(), ny = y.ground().size();
  std::vector<std::string> labels;
  labels.reserve(nx * ny);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) labels.push_back("(" + x.ground().label(a) + "," + y.ground().label(b) + ")");
  GroundSet ground(std::move(labels));

  const std::size_t length = std::max(x.scaleCount(), y.scaleCount());
  std::vector<Relation> chain;
  for (std::size_t i = 0; i < length; ++i) {
    const Relation& e = x.at(std::min(i, x.topIndex()));
    const Relation& f = y.at(std::min(i, y.topIndex()));
    Relation r(ground);
    for (std::size_t a = 0; a < nx; ++a)
      for (std::size_t b = 0; b < ny; ++b) {
        PointSet& row = r.row(productIndex(a, b, ny));
        e.row(a).forEach([&](std::size_t a2) {
          f.row(b).forEach([&](std::size_t b2) { row.insert(productIndex(a2, b2, ny)); });
        });
      }
    chain.push_back(std::move(r));
  }

  std::optional<Geometry> geo;
  const auto& gx = x.geometry();
  const auto& gy = y.geometry();
  if (gx && gy && gx->dimension == 1 && gy->dimension == 1) {
    geo = Geometry{2, {}, {}};
    for (std::size_t a = 0; a < nx; ++a)
      for (std::size_t b = 0; b < ny; ++b) geo->coords.push_back({gx->coords[a][0], gy->coords[b][0]});
    for (std::size_t i = 0; i < length; ++i) {
      auto rx = x.radius(std::min(i, x.topIndex()));
      auto ry = y.radius(std::min(i, y.topIndex()));
      geo->radius.push_back(rx && ry && *rx == *ry ? rx : std::nullopt);
    }
  }
  return makeFiltered(ground, chain, Provenance::Derived, std::move(geo));
}

CoarseSpace coproduct(const CoarseSpace& x, const CoarseSpace& y) {
  const std::size_t nx = x.ground().size(), ny = y.ground().size();
  std::vector<std::string> labels;
  labels.reserve(nx + ny);
  for (const auto& l : x.ground().labels()) labels.push_back("(1," + l + ")");
  for (const auto& l : y.ground().labels()) labels.push_back("(2," + l + ")");
  GroundSet ground(std::move(labels));

  const std::size_t length = std::max(x.scaleCount(), y.scaleCount());
  std::vector<Relation> chain;
  for (std::size_t i = 0; i < length; ++i) {
    const Relation& e = x.at(std::min(i, x.topIndex()));
    const Relation& f = y.at(std::min(i, y.topIndex()));
    Relation r(ground);
    for (std::size_t a = 0; a < nx; ++a) e.row(a).forEach([&](std::size_t b) { r.insert(a, b); });
    for (std::size_t a = 0; a < ny; ++a) f.row(a).forEach([&](std::size_t b) { r.insert(nx + a, nx + b); });
    chain.push_back(std::move(r));
  }
  return makeFiltered(ground, chain);
}

bool sameCoarseStructure(const CoarseSpace& x, const CoarseSpace& y) {
  return x.ground().sameAs(y.ground()) && x.top() == y.top();
}

bool sameFiltration(const CoarseSpace& x, const CoarseSpace& y) {
  if (!x.ground().sameAs(y.ground())) return false;
  for (const auto& e : x.chain())
    if (membershipScale(x, e) != membershipScale(y, e)) return false;
  for (const auto& e : y.chain())
    if (membershipScale(x, e) != membershipScale(y, e)) return false;
  return true;
}

}  // namespace coarse
