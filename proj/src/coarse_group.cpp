#include "coarse/coarse_group.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace coarse {

FiniteGroup::FiniteGroup(GroundSet elements, std::vector<std::vector<std::size_t>> table)
    : elements_(std::move(elements)), table_(std::move(table)) {
  const std::size_t n = elements_.size();
  if (n == 0) throw InvalidArgument("a group needs at least one element");
  if (table_.size() != n) throw InvalidArgument("Cayley table has the wrong number of rows");
  for (const auto& row : table_) {
    if (row.size() != n) throw InvalidArgument("Cayley table row has the wrong length");
    for (std::size_t c : row)
      if (c >= n) throw InvalidArgument("Cayley table entry " + std::to_string(c) + " is not an element");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (op(op(a, b), c) != op(a, op(b, c)))
          throw InvalidArgument("operation is not associative at (" + elements_.label(a) + ", " + elements_.label(b) +
                                ", " + elements_.label(c) + ")");
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = op(e, a) == a && op(a, e) == a;
    if (ok) identity_ = e, found = true;
  }
  if (!found) throw InvalidArgument("operation has no identity element");
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (op(a, b) == identity_ && op(b, a) == identity_) inverse_[a] = b;
    if (inverse_[a] == n) throw InvalidArgument("element '" + elements_.label(a) + "' has no inverse");
  }
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw InvalidArgument("cyclic group of order 0");
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(GroundSet::range(n), std::move(t));
}

FiniteGroup FiniteGroup::directProduct(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y)
      labels.push_back("(" + a.elements().label(x) + "," + b.elements().label(y) + ")");
  std::vector<std::vector<std::size_t>> t(na * nb, std::vector<std::size_t>(na * nb));
  for (std::size_t p = 0; p < na * nb; ++p)
    for (std::size_t q = 0; q < na * nb; ++q)
      t[p][q] = a.op(p / nb, q / nb) * nb + b.op(p % nb, q % nb);
  return FiniteGroup(GroundSet(std::move(labels)), std::move(t));
}

FiniteGroup FiniteGroup::symmetric3() {
  using Perm = std::array<int, 3>;
  // Images of 1, 2, 3 (stored zero-based).
  const std::vector<std::pair<std::string, Perm>> perms{
      {"e", {0, 1, 2}},     {"(12)", {1, 0, 2}},  {"(13)", {2, 1, 0}},
      {"(23)", {0, 2, 1}},  {"(123)", {1, 2, 0}}, {"(132)", {2, 0, 1}},
  };
  std::vector<std::string> labels;
  for (const auto& p : perms) labels.push_back(p.first);
  std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
  for (std::size_t s = 0; s < 6; ++s)
    for (std::size_t u = 0; u < 6; ++u) {
      Perm c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[s].second[perms[u].second[x]];
      for (std::size_t k = 0; k < 6; ++k)
        if (perms[k].second == c) t[s][u] = k;
    }
  return FiniteGroup(GroundSet(std::move(labels)), std::move(t));
}

bool FiniteGroup::isAbelian() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (op(a, b) != op(b, a)) return false;
  return true;
}

PointSet FiniteGroup::leftTranslate(std::size_t g, const PointSet& h) const {
  elements_.checkIndex(g);
  elements_.checkSet(h);
  PointSet out(size());
  h.forEach([&](std::size_t x) { out.insert(op(g, x)); });
  return out;
}

PointSet FiniteGroup::rightTranslate(const PointSet& h, std::size_t g) const {
  elements_.checkIndex(g);
  elements_.checkSet(h);
  PointSet out(size());
  h.forEach([&](std::size_t x) { out.insert(op(x, g)); });
  return out;
}

PointSet FiniteGroup::productSet(const PointSet& h, const PointSet& t) const {
  elements_.checkSet(h);
  elements_.checkSet(t);
  PointSet out(size());
  h.forEach([&](std::size_t x) { t.forEach([&](std::size_t y) { out.insert(op(x, y)); }); });
  return out;
}

PointSet FiniteGroup::inverseSet(const PointSet& h) const {
  elements_.checkSet(h);
  PointSet out(size());
  h.forEach([&](std::size_t x) { out.insert(inverse(x)); });
  return out;
}

bool FiniteGroup::isSubgroup(const PointSet& h) const {
  return h.contains(identity_) && productSet(h, h) == h && inverseSet(h) == h;
}

IdealChain validateIdealChain(const FiniteGroup& g, const std::vector<PointSet>& raw) {
  std::vector<PointSet> sets;
  PointSet acc = g.identitySet();
  for (const auto& h : raw) {
    g.elements().checkSet(h);
    acc |= h;
    acc |= g.inverseSet(h);
    sets.push_back(acc);
  }
  if (sets.empty()) sets.push_back(acc);
  while (true) {
    PointSet next = g.productSet(sets.back(), sets.back());
    if (next == sets.back()) break;
    sets.push_back(std::move(next));
  }
  return IdealChain(std::move(sets));
}

IdealChain finitaryIdeal(const FiniteGroup& g) {
  if (g.size() == 1) return IdealChain({g.identitySet()});
  return IdealChain({g.identitySet(), g.elements().allPoints()});
}

Relation leftEntourage(const FiniteGroup& g, const PointSet& h) {
  Relation out(g.elements());
  for (std::size_t x = 0; x < g.size(); ++x) out.row(x) = g.leftTranslate(x, h);
  return out;
}

Relation rightEntourage(const FiniteGroup& g, const PointSet& h) {
  Relation out(g.elements());
  for (std::size_t x = 0; x < g.size(); ++x) out.row(x) = g.rightTranslate(h, x);
  return out;
}

CoarseSpace leftStructure(const FiniteGroup& g, const IdealChain& ideal) {
  std::vector<Relation> chain;
  for (const auto& h : ideal.sets()) chain.push_back(leftEntourage(g, h));
  return CoarseSpace(g.elements(), std::move(chain));
}

CoarseSpace rightStructure(const FiniteGroup& g, const IdealChain& ideal) {
  std::vector<Relation> chain;
  for (const auto& h : ideal.sets()) chain.push_back(rightEntourage(g, h));
  return CoarseSpace(g.elements(), std::move(chain));
}

ShiftOutcome leftCoarseGroupCheck(const FiniteGroup& g, const CoarseSpace& x) {
  requireSameGround(g.elements(), x.ground(), "leftCoarseGroupCheck");
  ControlFunction control;
  for (std::size_t i = 0; i < x.scaleCount(); ++i) {
    Relation shifted(x.ground());
    const auto pairs = x.at(i).pairs();
    for (std::size_t s = 0; s < g.size(); ++s)
      for (auto [a, b] : pairs) {
        if (!x.top().contains(g.op(s, a), g.op(s, b))) return ShiftFailure{i, s, {a, b}};
        shifted.insert(g.op(s, a), g.op(s, b));
      }
    control.table.push_back(membershipScale(x, shifted).index());
  }
  return control;
}

IdealChain idealFromStructure(const FiniteGroup& g, const CoarseSpace& x) {
  auto check = leftCoarseGroupCheck(g, x);
  if (auto f = std::get_if<ShiftFailure>(&check)) {
    const auto& lbl = g.elements();
    throw NotCoarseGroup("not a left coarse group: shift by '" + lbl.label(f->shift) + "' moves (" +
                             lbl.label(f->pair.first) + ", " + lbl.label(f->pair.second) + ") out of every entourage",
                         *f);
  }
  std::vector<PointSet> balls;
  for (const auto& e : x.chain()) balls.push_back(ball(e, g.identity()));
  return validateIdealChain(g, balls);
}

MapReport inversionAsymorphismCheck(const FiniteGroup& g, const IdealChain& ideal) {
  std::vector<std::size_t> inv(g.size());
  for (std::size_t a = 0; a < g.size(); ++a) inv[a] = g.inverse(a);
  PointMap j(g.elements(), g.elements(), std::move(inv));
  return classify(j, leftStructure(g, ideal), rightStructure(g, ideal));
}

std::string formatNumber(double v) {
  if (v == 0) v = 0;  // drop the sign of negative zero
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

namespace {

// Whole number of steps in x, or throws.
long wholeSteps(double x, double step, const char* what) {
  double q = x / step;
  long k = std::lround(q);
  if (std::fabs(q - static_cast<double>(k)) > 1e-9) throw InvalidArgument(std::string(what) + " is not a whole number of steps");
  return k;
}

}  // namespace

std::pair<WindowedLine, CoarseSpace> windowedLine(WindowKind kind, double halfWidth, double step,
                                                  const std::vector<double>& scales) {
  if (kind == WindowKind::Integer) step = 1;
  if (!(halfWidth > 0) || !(step > 0)) throw InvalidArgument("window half-width and step must be positive");
  WindowedLine w{kind, halfWidth, step, wholeSteps(halfWidth, step, "half-width"), {}};
  std::vector<std::string> labels;
  for (long k = -w.reach; k <= w.reach; ++k) {
    w.values.push_back(static_cast<double>(k) * step);
    labels.push_back(formatNumber(w.values.back()));
  }
  CoarseSpace space = fromLine(GroundSet(std::move(labels)), w.values, scales);
  return {std::move(w), std::move(space)};
}

UnifiedDemoReport unifiedDemo(double halfWidth, double step, const std::vector<double>& scales) {
  if (!(step > 0) || step > 1) throw InvalidArgument("grid step must lie in (0, 1]");
  const long perUnit = wholeSteps(1, step, "1");
  auto [zw, zs] = windowedLine(WindowKind::Integer, halfWidth, 1, scales);
  auto [gw, gs] = windowedLine(WindowKind::Grid, halfWidth, step, scales);
  if (gw.reach != zw.reach * perUnit) throw InvalidArgument("grid window does not contain every integer of the window");

  // Index k of the integer window sits at grid index k * perUnit (offsets by reach).
  std::vector<std::size_t> inc(zw.values.size());
  for (long k = -zw.reach; k <= zw.reach; ++k) inc[k + zw.reach] = static_cast<std::size_t>(k * perUnit + gw.reach);
  std::vector<std::size_t> fl(gw.values.size());
  for (long k = -gw.reach; k <= gw.reach; ++k) {
    long z = k >= 0 ? k / perUnit : -((-k + perUnit - 1) / perUnit);
    fl[k + gw.reach] = static_cast<std::size_t>(z + zw.reach);
  }
  PointMap inclusion(zs.ground(), gs.ground(), std::move(inc));
  PointMap floorMap(gs.ground(), zs.ground(), std::move(fl));

  Scale firstOne = Scale::none();
  for (std::size_t i = 0; i < gs.scaleCount() && firstOne.isNone(); ++i) {
    auto r = gs.radius(i);
    if (!r || *r > 1) firstOne = Scale(i);
  }

  UnifiedDemoReport out{
      zw,
      gw,
      zs,
      gs,
      inclusion,
      floorMap,
      classify(inclusion, zs, gs),
      classify(floorMap, gs, zs),
      coarseInverseCheck(inclusion, floorMap, zs, gs),
      composeMaps(floorMap, inclusion) == PointMap::identity(zs.ground()),
      firstOne,
  };
  return out;
}

}  // namespace coarse
