#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "coarse/errors.hpp"
#include "coarse/relation.hpp"
#include "support/oracle.hpp"

using namespace coarse;

namespace {

// S_2 on {0..7}: |a - b| <= 1.
Relation adjacency(const GroundSet& g, long reach) {
  Relation r(g);
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b)
      if (std::labs(static_cast<long>(a) - static_cast<long>(b)) <= reach) r.insert(a, b);
  return r;
}

}  // namespace

TEST(GroundSet, RejectsDuplicateLabels) {
  EXPECT_THROW(GroundSet({"a", "b", "a"}), InvalidArgument);
}

TEST(GroundSet, LooksUpLabels) {
  GroundSet g({"x", "y"});
  EXPECT_EQ(g.indexOf("y"), 1u);
  EXPECT_FALSE(g.find("z"));
  EXPECT_THROW(g.indexOf("z"), UnknownPoint);
}

TEST(GroundSet, SameLabelsAreSameGround) {
  EXPECT_TRUE(GroundSet::range(3).sameAs(GroundSet({"0", "1", "2"})));
  EXPECT_FALSE(GroundSet::range(3).sameAs(GroundSet::range(4)));
}

TEST(Diagonal, ListsFixedPairs) {
  auto d = Relation::diagonal(GroundSet::range(3));
  EXPECT_EQ(oracle::toPairs(d), (oracle::Pairs{{0, 0}, {1, 1}, {2, 2}}));
}

TEST(Diagonal, EmptyGroundSet) {
  GroundSet empty;
  auto d = Relation::diagonal(empty);
  EXPECT_EQ(d.size(), 0u);
  EXPECT_TRUE(compose(d, d).empty());
  EXPECT_TRUE(inverse(d).empty());
  EXPECT_TRUE(image(d, empty.noPoints()).empty());
}

TEST(Diagonal, SizeEqualsPointCount) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = rng() % 65;
    EXPECT_EQ(Relation::diagonal(GroundSet::range(n)).size(), n);
  }
}

TEST(Inverse, TransposesSinglePair) {
  auto g = GroundSet::range(2);
  std::vector<IndexPair> p{{0, 1}};
  EXPECT_EQ(oracle::toPairs(inverse(Relation::fromPairs(g, p))), (oracle::Pairs{{1, 0}}));
}

TEST(Inverse, DiagonalIsSymmetric) {
  auto g = GroundSet::range(5);
  EXPECT_EQ(inverse(Relation::diagonal(g)), Relation::diagonal(g));
}

TEST(Inverse, IsAnInvolution) {
  auto g = GroundSet::range(6);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    auto e = oracle::randomRelation(g, rng, 0.3);
    EXPECT_EQ(inverse(inverse(e)), e);
    EXPECT_EQ(oracle::toPairs(inverse(e)), oracle::inverse(oracle::toPairs(e)));
  }
}

TEST(Inverse, BlockTransposeMatchesPairwiseOnWideGrounds) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {63u, 64u, 65u, 130u, 200u}) {
    auto g = GroundSet::range(n);
    auto e = oracle::randomRelation(g, rng, 0.1);
    auto t = inverse(e);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) ASSERT_EQ(t.contains(b, a), e.contains(a, b)) << n << " " << a << " " << b;
  }
}

TEST(Compose, DiagonalIsIdentity) {
  auto g = GroundSet::range(6);
  std::mt19937_64 rng(2);
  auto f = oracle::randomRelation(g, rng, 0.4);
  EXPECT_EQ(compose(Relation::diagonal(g), f), f);
  EXPECT_EQ(compose(f, Relation::diagonal(g)), f);
}

TEST(Compose, AdjacencySquaredReachesTwo) {
  auto g = GroundSet::range(8);
  auto s2 = adjacency(g, 1);
  auto expected = oracle::compose(oracle::toPairs(s2), oracle::toPairs(s2), 8);
  EXPECT_EQ(oracle::toPairs(compose(s2, s2)), expected);
  EXPECT_EQ(compose(s2, s2), adjacency(g, 2));
}

TEST(Compose, OrientationMatchesDefinition) {
  // (a, c) in E and (c, b) in F gives (a, b).
  auto g = GroundSet::range(3);
  std::vector<IndexPair> e{{0, 1}}, f{{1, 2}};
  auto r = compose(Relation::fromPairs(g, e), Relation::fromPairs(g, f));
  EXPECT_EQ(oracle::toPairs(r), (oracle::Pairs{{0, 2}}));
  EXPECT_TRUE(compose(Relation::fromPairs(g, f), Relation::fromPairs(g, e)).empty());
}

TEST(Compose, DistributesOverUnion) {
  auto g = GroundSet::range(5);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    auto e = oracle::randomRelation(g, rng, 0.3);
    auto f = oracle::randomRelation(g, rng, 0.3);
    auto h = oracle::randomRelation(g, rng, 0.3);
    EXPECT_EQ(compose(e, unionOf(f, h)), unionOf(compose(e, f), compose(e, h)));
    EXPECT_EQ(compose(unionOf(f, h), e), unionOf(compose(f, e), compose(h, e)));
  }
}

TEST(Compose, AssociativeAndReversedByInverse) {
  auto g = GroundSet::range(6);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto e = oracle::randomRelation(g, rng, 0.25);
    auto f = oracle::randomRelation(g, rng, 0.25);
    auto h = oracle::randomRelation(g, rng, 0.25);
    EXPECT_EQ(compose(compose(e, f), h), compose(e, compose(f, h)));
    EXPECT_EQ(inverse(compose(e, f)), compose(inverse(f), inverse(e)));
  }
}

TEST(Compose, RowClassKernelMatchesOracle) {
  // Equivalence-like relations with few distinct rows take the class path.
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = 40 + rng() % 60;
    auto g = GroundSet::range(n);
    std::size_t blocks = 1 + rng() % 4;
    Relation eq(g);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a % blocks == b % blocks) eq.insert(a, b);
    auto dense = oracle::randomRelation(g, rng, 0.6);
    auto expected = oracle::compose(oracle::toPairs(dense), oracle::toPairs(eq), n);
    EXPECT_EQ(oracle::toPairs(compose(dense, eq)), expected);
  }
}

TEST(Compose, RejectsGroundMismatch) {
  auto e = Relation::diagonal(GroundSet::range(3));
  auto f = Relation::diagonal(GroundSet::range(4));
  EXPECT_THROW(compose(e, f), GroundSetMismatch);
  EXPECT_THROW(unionOf(e, f), GroundSetMismatch);
}

TEST(Union, NeutralIdempotentAndCounted) {
  auto g = GroundSet::range(6);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    auto e = oracle::randomRelation(g, rng, 0.3);
    auto f = oracle::randomRelation(g, rng, 0.3);
    EXPECT_EQ(unionOf(e, Relation(g)), e);
    EXPECT_EQ(unionOf(e, e), e);
    EXPECT_EQ(unionOf(e, f).size(), e.size() + f.size() - intersectionOf(e, f).size());
    EXPECT_EQ(oracle::toPairs(unionOf(e, f)), oracle::unite(oracle::toPairs(e), oracle::toPairs(f)));
  }
}

TEST(Ball, DiagonalAndAdjacency) {
  auto g = GroundSet::range(8);
  for (std::size_t m = 0; m < 8; ++m) EXPECT_EQ(oracle::toPoints(ball(Relation::diagonal(g), m)), oracle::Points{m});
  EXPECT_EQ(oracle::toPoints(ball(adjacency(g, 1), 3)), (oracle::Points{2, 3, 4}));
  EXPECT_THROW(ball(adjacency(g, 1), 8), UnknownPoint);
}

TEST(Ball, MonotoneUnderUnion) {
  auto g = GroundSet::range(6);
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto e = oracle::randomRelation(g, rng, 0.3);
    auto f = oracle::randomRelation(g, rng, 0.3);
    for (std::size_t m = 0; m < 6; ++m) EXPECT_TRUE(ball(e, m).isSubsetOf(ball(unionOf(e, f), m)));
  }
}

TEST(Image, Examples) {
  auto g = GroundSet::range(8);
  auto s2 = adjacency(g, 1);
  EXPECT_TRUE(image(s2, g.noPoints()).empty());
  EXPECT_EQ(oracle::toPoints(image(s2, PointSet(8, {0, 7}))), (oracle::Points{0, 1, 6, 7}));
  PointSet n(8, {1, 4, 5});
  EXPECT_EQ(image(Relation::diagonal(g), n), n);
  EXPECT_THROW(image(s2, PointSet(7)), UnknownPoint);
}

TEST(Image, BallIsImageOfSingleton) {
  auto g = GroundSet::range(6);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    auto e = oracle::randomRelation(g, rng, 0.3);
    for (std::size_t m = 0; m < 6; ++m) EXPECT_EQ(ball(e, m), image(e, PointSet(6, {m})));
  }
}

TEST(Oracle, AllOperationsAgreeWithNestedLoops) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = rng() % 7;
    auto g = GroundSet::range(n);
    auto e = oracle::randomRelation(g, rng, 0.35);
    auto f = oracle::randomRelation(g, rng, 0.35);
    auto pe = oracle::toPairs(e), pf = oracle::toPairs(f);
    ASSERT_EQ(oracle::toPairs(compose(e, f)), oracle::compose(pe, pf, n));
    ASSERT_EQ(oracle::toPairs(inverse(e)), oracle::inverse(pe));
    auto nset = oracle::randomPoints(n, rng, 0.5);
    ASSERT_EQ(oracle::toPoints(image(e, nset)), oracle::image(pe, oracle::toPoints(nset)));
    for (std::size_t m = 0; m < n; ++m) ASSERT_EQ(oracle::toPoints(ball(e, m)), oracle::ball(pe, m));
  }
}

TEST(EquivalenceClosure, MatchesIteratedComposition) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + rng() % 7;
    auto g = GroundSet::range(n);
    auto e = oracle::randomRelation(g, rng, 0.15);
    auto sym = unionOf(unionOf(e, inverse(e)), Relation::diagonal(g));
    auto expected = oracle::transitiveClosure(oracle::toPairs(sym), n);
    EXPECT_EQ(oracle::toPairs(equivalenceClosure(e)), expected);
  }
}
