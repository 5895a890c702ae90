#include "coarse/hyperspace.hpp"

#include <bit>
#include <string>
#include <utility>

namespace coarse {

void checkHyperCap(std::size_t base, std::size_t cap) {
  if (cap > kHyperCap)
    throw InvalidArgument("hyper cap " + std::to_string(cap) + " exceeds the hard limit " + std::to_string(kHyperCap));
  if (base > cap)
    throw CapExceeded("power set of " + std::to_string(base) + " points exceeds the cap of " + std::to_string(cap));
}

GroundSet hyperGround(const GroundSet& base, std::size_t cap) {
  checkHyperCap(base.size(), cap);
  const std::size_t n = base.size();
  std::vector<std::string> labels;
  labels.reserve(std::size_t{1} << n);
  for (SubsetMask k = 0; k < (SubsetMask{1} << n); ++k) {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
      if (k >> i & 1U) {
        if (!first) s += ',';
        s += base.label(i);
        first = false;
      }
    labels.push_back(s + "}");
  }
  return GroundSet(std::move(labels));
}

SubsetMask maskOf(const PointSet& s) {
  if (s.size() > kHyperCap) throw CapExceeded("subset mask needs at most " + std::to_string(kHyperCap) + " points");
  return s.size() == 0 ? 0 : static_cast<SubsetMask>(s.data()[0]);
}

PointSet subsetOf(SubsetMask mask, std::size_t baseSize) {
  PointSet s(baseSize);
  for (std::size_t i = 0; i < baseSize; ++i)
    if (mask >> i & 1U) s.insert(i);
  return s;
}

namespace {

// img[K] = E[K] as masks, built from img[K minus its lowest bit].
std::vector<SubsetMask> imageTable(const Relation& e) {
  const std::size_t n = e.pointCount();
  std::vector<SubsetMask> rows(n);
  for (std::size_t a = 0; a < n; ++a) rows[a] = maskOf(e.row(a));
  std::vector<SubsetMask> img(std::size_t{1} << n, 0);
  for (SubsetMask k = 1; k < img.size(); ++k) {
    const auto low = static_cast<std::size_t>(std::countr_zero(k));
    img[k] = img[k & (k - 1)] | rows[low];
  }
  return img;
}

Relation liftWith(const GroundSet& hyper, const std::vector<SubsetMask>& img) {
  Relation out(hyper);
  for (SubsetMask k = 0; k < img.size(); ++k) {
    const SubsetMask reach = img[k];
    PointSet& row = out.row(k);
    // L ranges over submasks of E[K], including the empty one.
    for (SubsetMask l = reach;; l = (l - 1) & reach) {
      if ((k & ~img[l]) == 0) row.insert(l);
      if (l == 0) break;
    }
  }
  return out;
}

}  // namespace

Relation expEntourage(const Relation& e, std::size_t cap) {
  GroundSet hyper = hyperGround(e.ground(), cap);
  return liftWith(hyper, imageTable(e));
}

CoarseSpace expSpace(const CoarseSpace& x, std::size_t cap) {
  GroundSet hyper = hyperGround(x.ground(), cap);
  std::vector<Relation> chain;
  chain.reserve(x.scaleCount());
  for (const auto& e : x.chain()) chain.push_back(liftWith(hyper, imageTable(e)));
  return CoarseSpace(hyper, std::move(chain), Provenance::Derived);
}

PointMap expMap(const PointMap& f, std::size_t cap) {
  GroundSet src = hyperGround(f.source(), cap);
  GroundSet dst = hyperGround(f.target(), cap);
  std::vector<std::size_t> to(src.size(), 0);
  for (SubsetMask k = 1; k < to.size(); ++k) {
    const auto low = static_cast<std::size_t>(std::countr_zero(k));
    to[k] = to[k & (k - 1)] | (std::size_t{1} << f(low));
  }
  return PointMap(src, dst, std::move(to));
}

ExpPreservation expPreservationCheck(const PointMap& f, const CoarseSpace& x, const CoarseSpace& y, std::size_t cap) {
  ExpPreservation out;
  out.base = classify(f, x, y).classes;
  out.lifted = classify(expMap(f, cap), expSpace(x, cap), expSpace(y, cap)).classes;
  out.agrees = {out.base.bornologous == out.lifted.bornologous,
                out.base.effectivelyProper == out.lifted.effectivelyProper,
                out.base.asymorphism == out.lifted.asymorphism,
                out.base.coarseEquivalence == out.lifted.coarseEquivalence};
  return out;
}

SystemPtr liftCDS(const SystemPtr& sys, std::size_t cap) {
  auto base = validateCDS(*sys);
  if (!base.ok()) throw InvalidArgument("cannot lift an invalid system: " + base.violation->describe(*sys));
  std::vector<PointMap> evo;
  evo.reserve(sys->evolution().size());
  for (const auto& phi : sys->evolution()) evo.push_back(expMap(phi, cap));
  auto lifted = std::make_shared<const CoarseDynamicalSystem>(expSpace(sys->space(), cap), sys->time(), std::move(evo));
  auto r = validateCDS(*lifted);
  if (!r.ok()) throw VerificationBug("lifted system fails validation: " + r.violation->describe(*lifted));
  return lifted;
}

Conjugacy liftConjugacy(const Conjugacy& c, std::size_t cap) {
  auto out = checkConjugacy(liftCDS(c.fromPtr(), cap), liftCDS(c.toPtr(), cap), expMap(c.f(), cap), c.h());
  if (auto* fail = std::get_if<ConjugacyFailure>(&out))
    throw VerificationBug(std::string("lifted conjugacy fails at ") + toString(fail->clause) + ": " + fail->detail);
  return std::get<Conjugacy>(std::move(out));
}

}  // namespace coarse
