#include "coarse/cli/generator.hpp"

#include <algorithm>
#include <numeric>

namespace coarse::cli {

std::uint64_t instanceSeed(std::uint64_t base, std::size_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

using Rng = std::mt19937_64;

std::size_t below(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

struct Catalog {
  std::string name;
  FiniteGroup group;
};

std::vector<Catalog> catalog(std::size_t maxGroup) {
  std::vector<Catalog> out;
  for (std::size_t n = 1; n <= std::min<std::size_t>(maxGroup, 6); ++n)
    out.push_back({"Z" + std::to_string(n), FiniteGroup::cyclic(n)});
  if (maxGroup >= 4) out.push_back({"Z2xZ2", FiniteGroup::klein()});
  if (maxGroup >= 6) out.push_back({"S3", FiniteGroup::symmetric3()});
  return out;
}

std::vector<PointSet> subgroups(const FiniteGroup& g) {
  std::vector<PointSet> out;
  for (std::size_t mask = 1; mask < (std::size_t{1} << g.size()); ++mask) {
    PointSet h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      if (mask >> i & 1U) h.insert(i);
    if (g.isSubgroup(h)) out.push_back(h);
  }
  return out;
}

struct Action {
  std::vector<std::string> labels;
  std::vector<std::size_t> component;
  // act[g][m] = g . m
  std::vector<std::vector<std::size_t>> act;
};

// Disjoint union of left coset spaces G/H with g . xH = gxH.
Action cosetAction(const FiniteGroup& g, Rng& rng, std::size_t maxPoints) {
  auto subs = subgroups(g);
  Action a;
  a.act.assign(g.size(), {});
  std::size_t components = 1 + below(rng, 3);
  for (std::size_t c = 0; c < components; ++c) {
    std::vector<PointSet> fits;
    for (const auto& h : subs)
      if (a.labels.size() + g.size() / h.count() <= maxPoints) fits.push_back(h);
    if (fits.empty()) break;
    const PointSet& h = fits[below(rng, fits.size())];
    std::vector<PointSet> cosets;
    std::vector<std::size_t> reps;
    for (std::size_t x = 0; x < g.size(); ++x) {
      auto coset = g.leftTranslate(x, h);
      if (std::find(cosets.begin(), cosets.end(), coset) == cosets.end()) {
        cosets.push_back(coset);
        reps.push_back(x);
      }
    }
    const std::size_t offset = a.labels.size();
    for (std::size_t k = 0; k < cosets.size(); ++k) {
      a.labels.push_back("c" + std::to_string(c) + ":" + g.elements().label(reps[k]) + "H");
      a.component.push_back(c);
    }
    for (std::size_t s = 0; s < g.size(); ++s)
      for (std::size_t k = 0; k < cosets.size(); ++k) {
        auto moved = g.leftTranslate(s, cosets[k]);
        auto it = std::find(cosets.begin(), cosets.end(), moved);
        a.act[s].push_back(offset + static_cast<std::size_t>(it - cosets.begin()));
      }
  }
  return a;
}

// Shortest-path closure of random weights, then the maximum over G.
DistanceMatrix invariantMetric(const Action& a, Rng& rng) {
  const std::size_t n = a.labels.size();
  const std::size_t comps = a.component.empty() ? 0 : a.component.back() + 1;
  std::vector<std::vector<bool>> far(comps, std::vector<bool>(comps, false));
  for (std::size_t c = 0; c < comps; ++c)
    for (std::size_t d = c + 1; d < comps; ++d) far[c][d] = far[d][c] = below(rng, 3) == 0;
  DistanceMatrix d0(n, std::vector<double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double w = far[a.component[i]][a.component[j]] ? kInfiniteDistance : static_cast<double>(1 + below(rng, 4));
      d0[i][j] = d0[j][i] = w;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d0[i][j] = std::min(d0[i][j], d0[i][k] + d0[k][j]);
  DistanceMatrix d(n, std::vector<double>(n, 0));
  for (const auto& g : a.act)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::max(d[i][j], d0[g[i]][g[j]]);
  return d;
}

std::vector<double> randomScales(Rng& rng) {
  std::vector<double> pool{1, 2, 3, 4, 6};
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(1 + below(rng, 3));
  std::sort(pool.begin(), pool.end());
  return pool;
}

IdealChain randomIdeal(const FiniteGroup& g, Rng& rng) {
  std::vector<PointSet> raw;
  std::size_t k = below(rng, 3);
  for (std::size_t i = 0; i < k; ++i) {
    PointSet s(g.size());
    std::size_t size = 1 + below(rng, std::min<std::size_t>(4, g.size()));
    for (std::size_t j = 0; j < size; ++j) s.insert(below(rng, g.size()));
    raw.push_back(s);
  }
  return validateIdealChain(g, raw);
}

std::optional<HyperTable> randomHyperop(const FiniteGroup& g, Rng& rng) {
  HyperTable t(g.size(), std::vector<PointSet>(g.size(), PointSet(g.size())));
  for (std::size_t a = 0; a < g.size(); ++a)
    for (std::size_t b = 0; b < g.size(); ++b) {
      t[a][b].insert(g.op(a, b));
      if (a != g.identity() && b != g.identity() && below(rng, 4) == 0) t[a][b].insert(below(rng, g.size()));
    }
  return t;
}

std::vector<std::vector<std::size_t>> automorphisms(const FiniteGroup& g) {
  std::vector<std::size_t> p(g.size());
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<std::vector<std::size_t>> out;
  do {
    bool hom = true;
    for (std::size_t a = 0; a < g.size() && hom; ++a)
      for (std::size_t b = 0; b < g.size() && hom; ++b) hom = p[g.op(a, b)] == g.op(p[a], p[b]);
    if (hom) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct Copy {
  SystemPtr system;
  PointMap f, h;
};

Copy relabel(const SystemPtr& a, const std::vector<std::vector<std::size_t>>& autos, Rng& rng) {
  const std::size_t n = a->ground().size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::string> labels(n);
  for (std::size_t m = 0; m < n; ++m) labels[perm[m]] = a->ground().label(m) + "'";
  GroundSet ground(std::move(labels));
  PointMap f(a->ground(), ground, perm);

  const auto& time = a->time();
  const auto& g = time.group();
  const auto& hp = autos[below(rng, autos.size())];
  PointMap h(g.elements(), g.elements(), hp);

  std::vector<Relation> chain;
  for (const auto& e : a->space().chain()) chain.push_back(imageRelation(f, e));
  CoarseSpace space(ground, std::move(chain));

  std::vector<PointSet> ideal;
  for (const auto& s : time.ideal().sets()) ideal.push_back(h.image(s));
  std::optional<HyperTable> ops;
  if (time.setValued()) {
    ops.emplace(g.size(), std::vector<PointSet>(g.size(), PointSet(g.size())));
    for (std::size_t x = 0; x < g.size(); ++x)
      for (std::size_t y = 0; y < g.size(); ++y) (*ops)[hp[x]][hp[y]] = h.image(time.product(x, y));
  }

  const PointMap finv = inverseMap(f);
  std::vector<std::optional<PointMap>> evo(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) evo[hp[s]] = composeMaps(f, composeMaps(a->phi(s), finv));
  std::vector<PointMap> evolution;
  for (auto& m : evo) evolution.push_back(std::move(*m));

  auto sys = std::make_shared<const CoarseDynamicalSystem>(
      std::move(space), TimeGroup(g, validateIdealChain(g, ideal), std::move(ops)), std::move(evolution));
  return Copy{std::move(sys), std::move(f), std::move(h)};
}

Conjugacy verified(const SystemPtr& a, const Copy& c) {
  auto out = checkConjugacy(a, c.system, c.f, c.h);
  if (auto* fail = std::get_if<ConjugacyFailure>(&out))
    throw VerificationBug(std::string("generated relabelling fails at ") + toString(fail->clause) + ": " +
                          fail->detail);
  return std::get<Conjugacy>(std::move(out));
}

}  // namespace

GeneratedInstance generateInstance(std::uint64_t seed, const SizeBounds& bounds) {
  Rng rng(seed);
  auto groups = catalog(bounds.maxGroup);
  for (int attempt = 0; attempt < 16; ++attempt) {
    const auto& pick = groups[below(rng, groups.size())];
    const FiniteGroup& g = pick.group;
    Action act = cosetAction(g, rng, bounds.maxPoints);
    if (act.labels.empty()) continue;
    GroundSet ground(act.labels);
    CoarseSpace space = fromMetric(ground, invariantMetric(act, rng), randomScales(rng));
    bool setValued = below(rng, 2) == 1;
    TimeGroup time(g, randomIdeal(g, rng), setValued ? randomHyperop(g, rng) : std::nullopt);
    std::vector<PointMap> evolution;
    for (const auto& row : act.act) evolution.emplace_back(ground, ground, row);
    auto a = std::make_shared<const CoarseDynamicalSystem>(std::move(space), std::move(time), std::move(evolution));
    if (!validateCDS(*a).ok()) continue;

    auto autos = automorphisms(g);
    Copy b = relabel(a, autos, rng);
    Copy c = relabel(b.system, autos, rng);
    GeneratedInstance out;
    out.seed = seed;
    out.groupName = pick.name;
    out.setValued = a->time().setValued();
    out.a = a;
    out.b = b.system;
    out.c = c.system;
    out.ab = verified(a, b);
    out.bc = verified(b.system, c);
    return out;
  }
  throw GenerationExhausted("no valid instance after 16 attempts for seed " + std::to_string(seed));
}

}  // namespace coarse::cli
