#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "coarse/coarse_maps.hpp"
#include "support/oracle.hpp"
#include "support/random_spaces.hpp"

using namespace coarse;
using testsys::randomMap;
using testsys::randomSpace;

namespace {

const std::vector<double> kScales{1, 2, 4, 8};

struct Line {
  std::vector<double> coords;
  CoarseSpace space;
};

Line window(double halfWidth, double step, const std::vector<double>& scales = kScales) {
  std::vector<double> coords;
  const long count = std::lround(2 * halfWidth / step);
  for (long k = 0; k <= count; ++k) coords.push_back(-halfWidth + k * step);
  std::vector<std::string> labels;
  for (double c : coords) labels.push_back(std::to_string(c));
  GroundSet g(labels);
  return {coords, fromLine(g, coords, scales)};
}

// Position of value v in coords (v must be present).
std::size_t indexOfValue(const std::vector<double>& coords, double v) {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (std::fabs(coords[i] - v) < 1e-9) return i;
  throw std::logic_error("value not in window");
}

PointMap inclusion(const Line& z, const Line& grid) {
  std::vector<std::size_t> to;
  for (double c : z.coords) to.push_back(indexOfValue(grid.coords, c));
  return PointMap(z.space.ground(), grid.space.ground(), to);
}

PointMap floorMap(const Line& grid, const Line& z) {
  std::vector<std::size_t> to;
  for (double c : grid.coords) to.push_back(indexOfValue(z.coords, std::floor(c)));
  return PointMap(grid.space.ground(), z.space.ground(), to);
}

// Least scale index whose open strip contains every listed distance; the
// top index (appended full relation) otherwise.
std::size_t stripIndexFor(double distance, const std::vector<double>& scales, std::size_t top) {
  for (std::size_t i = 0; i < scales.size(); ++i)
    if (distance < scales[i]) return i;
  return top;
}

// Bornologous control computed from coordinates: for each strip, the largest
// image distance over all pairs inside it.
std::vector<std::size_t> lineControlOracle(const Line& x, const Line& y, const std::vector<std::size_t>& to) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.space.scaleCount(); ++i) {
    double worst = 0;
    for (std::size_t a = 0; a < x.coords.size(); ++a)
      for (std::size_t b = 0; b < x.coords.size(); ++b) {
        bool inStrip = i < kScales.size() ? std::fabs(x.coords[a] - x.coords[b]) < kScales[i] : true;
        if (inStrip) worst = std::max(worst, std::fabs(y.coords[to[a]] - y.coords[to[b]]));
      }
    out.push_back(stripIndexFor(worst, kScales, y.space.topIndex()));
  }
  return out;
}

void expectWitness(const ControlFailure& w, const PointMap& f, const Relation& sourceChainElement,
                   const Relation& targetTop) {
  EXPECT_TRUE(sourceChainElement.contains(w.sourcePair.first, w.sourcePair.second));
  EXPECT_EQ(f(w.sourcePair.first), w.targetPair.first);
  EXPECT_EQ(f(w.sourcePair.second), w.targetPair.second);
  EXPECT_FALSE(targetTop.contains(w.targetPair.first, w.targetPair.second));
}

}  // namespace

TEST(PointMap, ValidatesAssignments) {
  auto g = GroundSet::range(3);
  EXPECT_THROW(PointMap(g, g, {0, 1}), InvalidArgument);
  EXPECT_THROW(PointMap(g, g, {0, 1, 3}), UnknownPoint);
  EXPECT_THROW(PointMap::fromLabels(g, g, {{"0", "1"}, {"1", "1"}}), InvalidArgument);
  EXPECT_THROW(PointMap::fromLabels(g, g, {{"0", "1"}, {"0", "2"}, {"1", "1"}, {"2", "0"}}), InvalidArgument);
  auto f = PointMap::fromLabels(g, g, {{"0", "1"}, {"1", "2"}, {"2", "0"}});
  EXPECT_TRUE(f.isBijective());
  EXPECT_EQ(composeMaps(inverseMap(f), f), PointMap::identity(g));
  EXPECT_THROW(inverseMap(PointMap::constant(g, g, 0)), InvalidArgument);
}

TEST(PointMap, RelationImagesMatchPairEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto m = GroundSet::range(1 + rng() % 6);
    auto n = GroundSet::range(1 + rng() % 6);
    auto f = randomMap(rng, m, n, false);
    auto e = oracle::randomRelation(m, rng, 0.3);
    auto h = oracle::randomRelation(n, rng, 0.3);
    oracle::Pairs img, pre;
    for (auto [a, b] : oracle::toPairs(e)) img.emplace(f(a), f(b));
    for (std::size_t a = 0; a < m.size(); ++a)
      for (std::size_t b = 0; b < m.size(); ++b)
        if (h.contains(f(a), f(b))) pre.emplace(a, b);
    ASSERT_EQ(oracle::toPairs(imageRelation(f, e)), img);
    ASSERT_EQ(oracle::toPairs(preimageRelation(f, h)), pre);
  }
}

TEST(Closeness, ReflexiveAndSymmetric) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    auto y = randomSpace(rng, 1 + rng() % 6);
    auto k = GroundSet::range(1 + rng() % 5);
    auto f = randomMap(rng, k, y.ground(), false);
    auto g = randomMap(rng, k, y.ground(), false);
    EXPECT_EQ(closenessScale(f, f, y), Scale(0));
    EXPECT_EQ(closenessScale(f, g, y), closenessScale(g, f, y));
  }
}

TEST(Closeness, ShiftByOneOnIntegerWindow) {
  auto z = window(4, 1);
  std::vector<std::size_t> shift;
  for (std::size_t i = 0; i < 9; ++i) shift.push_back(std::min<std::size_t>(i + 1, 8));
  PointMap g(z.space.ground(), z.space.ground(), shift);
  // Largest displacement is 1, first contained by the strip of width 2.
  EXPECT_EQ(closenessScale(PointMap::identity(z.space.ground()), g, z.space), Scale(stripIndexFor(1, kScales, 4)));
  EXPECT_EQ(closenessScale(PointMap::identity(z.space.ground()), g, z.space), Scale(1));
}

TEST(Closeness, ConstantsInSeparateComponents) {
  auto g = GroundSet::range(4);
  DistanceMatrix d(4, std::vector<double>(4, kInfiniteDistance));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      if ((a < 2) == (b < 2)) d[a][b] = std::fabs(double(a) - double(b));
  auto y = fromMetric(g, d, {1, 2});
  auto k = GroundSet::range(3);
  EXPECT_TRUE(closenessScale(PointMap::constant(k, g, 0), PointMap::constant(k, g, 3), y).isNone());
  EXPECT_EQ(closenessScale(PointMap::constant(k, g, 0), PointMap::constant(k, g, 1), y), Scale(1));
}

TEST(Bornologous, IdentityAndBoundedTarget) {
  auto z = window(4, 1);
  auto id = bornologousControl(PointMap::identity(z.space.ground()), z.space, z.space);
  ASSERT_TRUE(hasControl(id));
  EXPECT_EQ(control(id).table, (std::vector<std::size_t>{0, 1, 2, 3, 4}));

  std::mt19937_64 rng(33);
  auto b = bounded(GroundSet::range(3));
  auto f = randomMap(rng, z.space.ground(), b.ground(), false);
  auto rho = bornologousControl(f, z.space, b);
  ASSERT_TRUE(hasControl(rho));
  for (auto j : control(rho).table) EXPECT_EQ(j, 0u);
}

TEST(Bornologous, FloorMapMatchesCoordinateOracle) {
  auto z = window(4, 1);
  auto grid = window(4, 0.25);
  auto fl = floorMap(grid, z);
  auto rho = bornologousControl(fl, grid.space, z.space);
  ASSERT_TRUE(hasControl(rho));
  EXPECT_EQ(control(rho).table, lineControlOracle(grid, z, fl.assignment()));
  EXPECT_TRUE(control(rho).isMonotone());
  for (std::size_t i = 0; i < control(rho).table.size(); ++i)
    EXPECT_LE(control(rho)(i), std::min(i + 1, z.space.topIndex()));
}

TEST(Bornologous, FailureCarriesCheckableWitness) {
  auto d = discrete(GroundSet::range(2));
  auto two = discrete(GroundSet::range(2));
  auto b = bounded(GroundSet::range(2));
  // A bijection from the bounded space onto the discrete one.
  auto f = PointMap::identity(GroundSet::range(2));
  auto out = bornologousControl(f, b, two);
  ASSERT_FALSE(hasControl(out));
  auto w = std::get<ControlFailure>(out);
  EXPECT_EQ(w.scale, 0u);
  expectWitness(w, f, b.at(0), two.top());
  (void)d;
}

TEST(EffectivelyProper, IdentityAndCollapse) {
  auto z = window(4, 1);
  auto id = effectivelyProperControl(PointMap::identity(z.space.ground()), z.space, z.space);
  ASSERT_TRUE(hasControl(id));
  EXPECT_EQ(control(id).table, (std::vector<std::size_t>{0, 1, 2, 3, 4}));

  auto two = discrete(GroundSet::range(2));
  auto one = discrete(GroundSet::range(1));
  auto c = PointMap::constant(two.ground(), one.ground(), 0);
  auto out = effectivelyProperControl(c, two, one);
  ASSERT_FALSE(hasControl(out));
  auto w = std::get<ControlFailure>(out);
  EXPECT_EQ(w.scale, 0u);
  EXPECT_TRUE(one.at(0).contains(w.targetPair.first, w.targetPair.second));
  EXPECT_FALSE(two.top().contains(w.sourcePair.first, w.sourcePair.second));
}

TEST(EffectivelyProper, InclusionMatchesCoordinateOracle) {
  auto z = window(4, 1);
  auto grid = window(4, 0.25);
  auto inc = inclusion(z, grid);
  auto sigma = effectivelyProperControl(inc, z.space, grid.space);
  ASSERT_TRUE(hasControl(sigma));
  for (std::size_t j = 0; j < grid.space.scaleCount(); ++j) {
    double worst = 0;
    for (std::size_t a = 0; a < z.coords.size(); ++a)
      for (std::size_t b = 0; b < z.coords.size(); ++b)
        if (grid.space.at(j).contains(inc(a), inc(b))) worst = std::max(worst, std::fabs(z.coords[a] - z.coords[b]));
    EXPECT_EQ(control(sigma)(j), stripIndexFor(worst, kScales, z.space.topIndex()));
    EXPECT_LE(control(sigma)(j), j);
  }
}

TEST(Large, Examples) {
  auto g = GroundSet::range(8);
  DistanceMatrix d(8, std::vector<double>(8));
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b) d[a][b] = std::fabs(double(a) - double(b));
  auto x = fromMetric(g, d, {1, 2, 5});
  EXPECT_EQ(isLarge(g.allPoints(), x), Scale(0));
  EXPECT_TRUE(isLarge(g.noPoints(), x).isNone());
  EXPECT_EQ(isLarge(PointSet(8, {0, 4}), x), Scale(2));
  EXPECT_THROW(isLarge(PointSet(3), x), UnknownPoint);
}

TEST(Classify, IdentityHasEveryClass) {
  auto z = window(4, 1);
  auto r = classify(PointMap::identity(z.space.ground()), z.space, z.space);
  EXPECT_TRUE(r.classes.bornologous && r.classes.effectivelyProper && r.classes.asymorphism &&
              r.classes.asymorphicEmbedding && r.classes.coarseEquivalence);
  ASSERT_TRUE(r.closeScaleToIdentity);
  EXPECT_EQ(*r.closeScaleToIdentity, Scale(0));
  EXPECT_EQ(r.largeImageScale, Scale(0));
}

TEST(Classify, FloorIsEquivalenceButNotAsymorphism) {
  auto z = window(4, 1);
  auto grid = window(4, 0.25);
  auto r = classify(floorMap(grid, z), grid.space, z.space);
  EXPECT_TRUE(r.classes.coarseEquivalence);
  EXPECT_FALSE(r.classes.asymorphism);
  EXPECT_FALSE(r.injective);
  EXPECT_FALSE(r.closeScaleToIdentity);
  auto ri = classify(inclusion(z, grid), z.space, grid.space);
  EXPECT_TRUE(ri.classes.coarseEquivalence);
  EXPECT_TRUE(ri.classes.asymorphicEmbedding);
  EXPECT_FALSE(ri.classes.asymorphism);
}

TEST(Classify, FlagsFollowImplications) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = randomSpace(rng, 1 + rng() % 5);
    auto y = randomSpace(rng, 1 + rng() % 5);
    if (rng() % 2) y = makeFiltered(y.ground(), {Relation::diagonal(y.ground())});
    bool bij = x.ground().size() == y.ground().size() && rng() % 2;
    auto f = randomMap(rng, x.ground(), y.ground(), bij);
    auto r = classify(f, x, y);
    const auto& c = r.classes;
    EXPECT_EQ(c.asymorphism, r.bijective && c.bornologous && c.effectivelyProper);
    if (c.asymorphism) EXPECT_TRUE(c.asymorphicEmbedding && c.coarseEquivalence);
    if (c.asymorphicEmbedding) EXPECT_TRUE(c.bornologous && c.effectivelyProper);
    if (r.bijective && c.coarseEquivalence) EXPECT_TRUE(c.asymorphism);
    if (hasControl(r.bornologous)) EXPECT_TRUE(control(r.bornologous).isMonotone());
    if (hasControl(r.effectivelyProper)) EXPECT_TRUE(control(r.effectivelyProper).isMonotone());
    if (auto w = std::get_if<ControlFailure>(&r.bornologous)) expectWitness(*w, f, x.at(w->scale), y.top());
  }
}

TEST(Variants, DefinitionVariantsAgree) {
  std::mt19937_64 rng(35);
  int asym = 0, emb = 0, equiv = 0;
  for (int trial = 0; trial < 600; ++trial) {
    std::size_t n = 1 + rng() % 5;
    auto x = randomSpace(rng, n);
    auto y = randomSpace(rng, rng() % 3 == 0 ? n : 1 + rng() % 5);
    if (trial % 3 == 0) y = x;  // self-maps hit the positive cases
    bool bij = x.ground().size() == y.ground().size() && rng() % 2;
    auto f = randomMap(rng, x.ground(), y.ground(), bij);
    bool a1 = isAsymorphismByInverse(f, x, y), a2 = isAsymorphismByControls(f, x, y);
    bool e1 = isAsymorphicEmbeddingByRestriction(f, x, y), e2 = isAsymorphicEmbeddingByControls(f, x, y);
    bool v1 = isCoarseEquivalenceByInverse(f, x, y), v2 = isCoarseEquivalenceByControls(f, x, y);
    ASSERT_EQ(a1, a2);
    ASSERT_EQ(e1, e2);
    ASSERT_EQ(v1, v2);
    asym += a1, emb += e1, equiv += v1;
  }
  // The sample must exercise both verdicts.
  EXPECT_GT(asym, 10);
  EXPECT_GT(emb, asym);
  EXPECT_GT(equiv, asym);
}

TEST(Variants, AsymorphismInverseHasControls) {
  std::mt19937_64 rng(36);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    auto x = randomSpace(rng, 1 + rng() % 6);
    auto f = randomMap(rng, x.ground(), x.ground(), true);
    if (!classify(f, x, x).classes.asymorphism) continue;
    ++found;
    auto g = inverseMap(f);
    EXPECT_TRUE(hasControl(bornologousControl(g, x, x)));
    EXPECT_TRUE(hasControl(effectivelyProperControl(g, x, x)));
  }
  EXPECT_GT(found, 20);
}

TEST(Controls, CompositionIsBoundedByChainedTables) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 300; ++trial) {
    auto x = randomSpace(rng, 1 + rng() % 5);
    auto y = randomSpace(rng, 1 + rng() % 5);
    auto z = randomSpace(rng, 1 + rng() % 5);
    auto f = randomMap(rng, x.ground(), y.ground(), false);
    auto g = randomMap(rng, y.ground(), z.ground(), false);
    auto rf = bornologousControl(f, x, y), rg = bornologousControl(g, y, z);
    if (!hasControl(rf) || !hasControl(rg)) continue;
    auto rgf = bornologousControl(composeMaps(g, f), x, z);
    ASSERT_TRUE(hasControl(rgf));
    EXPECT_TRUE(control(rgf).boundedBy(chainControls(control(rf), control(rg))));
  }
}

TEST(Controls, SubRelationsStayWithinChainWitness) {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 200; ++trial) {
    auto x = randomSpace(rng, 2 + rng() % 4);
    auto y = randomSpace(rng, 2 + rng() % 4);
    auto f = randomMap(rng, x.ground(), y.ground(), false);
    auto rho = bornologousControl(f, x, y);
    auto sigma = effectivelyProperControl(f, x, y);
    for (std::size_t i = 0; i < x.scaleCount() && hasControl(rho); ++i) {
      auto e = intersectionOf(x.at(i), oracle::randomRelation(x.ground(), rng, 0.5));
      EXPECT_LE(membershipScale(y, imageRelation(f, e)), Scale(control(rho)(i)));
    }
    for (std::size_t j = 0; j < y.scaleCount() && hasControl(sigma); ++j) {
      auto e = intersectionOf(y.at(j), oracle::randomRelation(y.ground(), rng, 0.5));
      EXPECT_LE(membershipScale(x, preimageRelation(f, e)), Scale(control(sigma)(j)));
    }
  }
}

TEST(CoarseInverse, IdentityPair) {
  auto z = window(4, 1);
  auto id = PointMap::identity(z.space.ground());
  auto r = coarseInverseCheck(id, id, z.space, z.space);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.backAndForth, Scale(0));
  EXPECT_EQ(r.forthAndBack, Scale(0));
}

TEST(CoarseInverse, InclusionAndFloor) {
  auto z = window(4, 1);
  auto grid = window(4, 0.25);
  auto inc = inclusion(z, grid);
  auto fl = floorMap(grid, z);
  auto r = coarseInverseCheck(inc, fl, z.space, grid.space);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(composeMaps(fl, inc), PointMap::identity(z.space.ground()));
  EXPECT_EQ(r.backAndForth, Scale(0));
  // Displacements |floor(r) - r| are at most 0.75, inside the width-1 strip,
  // so closeness holds already below the first strip that contains 1.
  EXPECT_EQ(r.forthAndBack, Scale(0));
  EXPECT_LE(r.forthAndBack, Scale(stripIndexFor(1, kScales, grid.space.topIndex())));
}

TEST(CoarseInverse, ScramblingBijectionFails) {
  // Two windows at infinite distance: a bijection mixing them is not bornologous.
  std::mt19937_64 rng(39);
  auto z = window(4, 1);
  auto two = coproduct(z.space, z.space);
  auto id = PointMap::identity(two.ground());
  int failures = 0;
  for (int trial = 0; trial < 20; ++trial) {
    auto g = randomMap(rng, two.ground(), two.ground(), true);
    auto r = coarseInverseCheck(id, g, two, two);
    if (r.ok()) continue;
    ++failures;
    if (auto w = std::get_if<ControlFailure>(&r.gControl)) expectWitness(*w, g, two.at(w->scale), two.top());
  }
  EXPECT_GT(failures, 15);
}

TEST(CoarseInverse, CandidateRequiresLargeImage) {
  auto x = discrete(GroundSet::range(2));
  auto y = discrete(GroundSet::range(3));
  PointMap f(x.ground(), y.ground(), {0, 1});
  EXPECT_FALSE(candidateCoarseInverse(f, y));
  auto xb = bounded(x.ground());
  auto yb = bounded(y.ground());
  auto g = candidateCoarseInverse(f, yb);
  ASSERT_TRUE(g);
  EXPECT_TRUE(coarseInverseCheck(f, *g, xb, yb).ok());
  EXPECT_FALSE(coarseInverseCheck(f, *g, x, yb).ok());
  auto h = candidateCoarseInverse(PointMap::identity(y.ground()), y);
  ASSERT_TRUE(h);
  EXPECT_EQ(*h, PointMap::identity(y.ground()));
}
