#include "coarse/asdim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <string>
#include <utility>

namespace coarse {

Scale uniformBoundScale(const Cover& cover, const CoarseSpace& x) {
  std::size_t level = 0;
  for (const auto& family : cover.families)
    for (const auto& set : family) {
      x.ground().checkSet(set);
      if (set.empty()) throw InvalidArgument("cover contains an empty set");
      bool fits = true;
      set.forEach([&](std::size_t u) {
        while (fits && !set.isSubsetOf(x.at(level).row(u))) {
          if (++level == x.scaleCount()) fits = false;
        }
      });
      if (!fits) return Scale::none();
    }
  return Scale(level);
}

bool separatedCheck(const std::vector<PointSet>& family, const Relation& e) {
  std::vector<PointSet> reach;
  reach.reserve(family.size());
  for (const auto& u : family) reach.push_back(image(e, u));
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < family.size(); ++b)
      if (a != b && reach[a].intersects(family[b])) return false;
  return true;
}

bool coversGround(const Cover& cover, std::size_t groundSize) {
  PointSet all(groundSize);
  for (const auto& family : cover.families)
    for (const auto& set : family) all |= set;
  return all.isFull();
}

const char* toString(CoverSource s) {
  switch (s) {
    case CoverSource::IntervalTemplate: return "interval-template";
    case CoverSource::BrickTemplate: return "brick-template";
    case CoverSource::SquareTemplate: return "square-template";
    case CoverSource::Greedy: return "greedy";
    case CoverSource::Exact: return "exact";
  }
  return "?";
}

const char* toString(AsdimVerdict v) {
  switch (v) {
    case AsdimVerdict::Witness: return "WITNESS";
    case AsdimVerdict::ExhaustedExact: return "EXHAUSTED_EXACT";
    case AsdimVerdict::GaveUpHeuristic: return "GAVE_UP_HEURISTIC";
  }
  return "?";
}

Cover padCover(Cover cover, std::size_t n) {
  if (cover.families.size() < n + 1) cover.families.resize(n + 1);
  return cover;
}

Cover transportCover(const Cover& cover, const PointMap& f) {
  Cover out;
  for (const auto& family : cover.families) {
    auto& mapped = out.families.emplace_back();
    for (const auto& set : family) mapped.push_back(f.image(set));
  }
  return out;
}

namespace {

bool separatedCover(const Cover& c, const Relation& e) {
  for (const auto& family : c.families)
    if (!separatedCheck(family, e)) return false;
  return true;
}

// Groups points by an integer key (family, cell) into a cover with
// families + 1 entries, cells in first-seen order.
Cover coverFromCells(const std::vector<std::pair<std::size_t, long long>>& cellOf, std::size_t groundSize,
                     std::size_t families) {
  Cover out;
  out.families.resize(families);
  std::map<std::pair<std::size_t, long long>, std::size_t> slot;
  for (std::size_t p = 0; p < groundSize; ++p) {
    auto [it, fresh] = slot.try_emplace(cellOf[p], out.families[cellOf[p].first].size());
    if (fresh) out.families[cellOf[p].first].emplace_back(groundSize);
    out.families[cellOf[p].first][it->second].insert(p);
  }
  return out;
}

long long cell(double offset, double width) { return static_cast<long long>(std::floor(offset / width + 1e-9)); }

std::size_t mod(long long v, long long m) { return static_cast<std::size_t>(((v % m) + m) % m); }

struct Template {
  Cover cover;
  CoverSource source;
  double width;
};

std::vector<Template> templatesFor(const CoarseSpace& x, std::size_t i, std::size_t n) {
  std::vector<Template> out;
  const auto& geo = x.geometry();
  auto r = x.radius(i);
  if (!geo || !r || *r <= 0 || x.ground().empty()) return out;
  const std::size_t size = x.ground().size();
  double x0 = geo->coords[0][0], y0 = geo->coords[0][1];
  for (const auto& c : geo->coords) {
    x0 = std::min(x0, c[0]);
    y0 = std::min(y0, c[1]);
  }
  std::vector<std::pair<std::size_t, long long>> cells(size);
  if (geo->dimension == 1 && n >= 1) {
    for (double w : {2 * *r, *r}) {
      for (std::size_t p = 0; p < size; ++p) {
        long long k = cell(geo->coords[p][0] - x0, w);
        cells[p] = {mod(k, 2), k};
      }
      out.push_back({coverFromCells(cells, size, n + 1), CoverSource::IntervalTemplate, w});
    }
  } else if (geo->dimension == 2 && n == 2) {
    // Rows of height r, bricks of width 2r, each row shifted by r.
    for (std::size_t p = 0; p < size; ++p) {
      long long k = cell(geo->coords[p][1] - y0, *r);
      long long j = cell(geo->coords[p][0] - x0 - static_cast<double>(k) * *r, 2 * *r);
      cells[p] = {mod(j + 2 * k, 3), j * 1'000'003LL + k};
    }
    out.push_back({coverFromCells(cells, size, n + 1), CoverSource::BrickTemplate, 2 * *r});
  } else if (geo->dimension == 2 && n >= 3) {
    for (std::size_t p = 0; p < size; ++p) {
      long long a = cell(geo->coords[p][0] - x0, 2 * *r);
      long long b = cell(geo->coords[p][1] - y0, 2 * *r);
      cells[p] = {mod(a, 2) + 2 * mod(b, 2), a * 1'000'003LL + b};
    }
    out.push_back({coverFromCells(cells, size, n + 1), CoverSource::SquareTemplate, 2 * *r});
  }
  return out;
}

// A template is kept when its bound is a geometric strip no wider than the
// template cells, so bound reach stays within twice the separation scale.
bool templateAccepted(const CoarseSpace& x, std::size_t i, const Template& t, Scale bound,
                      std::optional<std::size_t> cap) {
  if (bound.isNone() || (cap && bound.index() > *cap)) return false;
  if (bound.index() <= i) return true;
  auto rb = x.radius(bound.index());
  return rb && *rb <= t.width + 1e-9;
}

class Blocks {
 public:
  Blocks(std::size_t size, std::size_t families) : size_(size), byFamily_(families), blockOf_(size, kNone) {}

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  // Blocks of family c met by ball (ball is E_i[p]).
  std::vector<std::size_t> touching(std::size_t c, const PointSet& ball) const {
    std::vector<std::size_t> out;
    ball.forEach([&](std::size_t q) {
      std::size_t b = blockOf_[q];
      if (b != kNone && family_[b] == c && std::find(out.begin(), out.end(), b) == out.end()) out.push_back(b);
    });
    return out;
  }

  std::size_t open(std::size_t c, std::size_t p) {
    std::size_t b = sets_.size();
    sets_.emplace_back(size_);
    family_.push_back(c);
    byFamily_[c].push_back(b);
    add(b, p);
    return b;
  }
  void add(std::size_t b, std::size_t p) {
    sets_[b].insert(p);
    blockOf_[p] = b;
  }
  void remove(std::size_t b, std::size_t p) {
    sets_[b].erase(p);
    blockOf_[p] = kNone;
  }
  void closeLast() {
    byFamily_[family_.back()].pop_back();
    family_.pop_back();
    sets_.pop_back();
  }
  // Moves every member of from into into.
  void merge(std::size_t into, std::size_t from) {
    sets_[from].forEach([&](std::size_t q) { blockOf_[q] = into; });
    sets_[into] |= sets_[from];
    sets_[from].clear();
  }

  const PointSet& set(std::size_t b) const { return sets_[b]; }
  const std::vector<std::size_t>& ofFamily(std::size_t c) const { return byFamily_[c]; }
  std::size_t familyCount() const { return byFamily_.size(); }

  Cover toCover() const {
    Cover out;
    out.families.resize(byFamily_.size());
    for (std::size_t c = 0; c < byFamily_.size(); ++c)
      for (std::size_t b : byFamily_[c])
        if (!sets_[b].empty()) out.families[c].push_back(sets_[b]);
    return out;
  }

 private:
  std::size_t size_;
  std::vector<PointSet> sets_;
  std::vector<std::size_t> family_;
  std::vector<std::vector<std::size_t>> byFamily_;
  std::vector<std::size_t> blockOf_;
};

// s bounds a set U when U lies in E_s[u] for each u; with E_s symmetric it is
// enough to check the new point against the old members.
bool fitsWith(const PointSet& set, std::size_t p, const Relation& bound) { return set.isSubsetOf(bound.row(p)); }

bool boundedSet(const PointSet& set, const Relation& bound) {
  bool ok = true;
  set.forEach([&](std::size_t u) { ok = ok && set.isSubsetOf(bound.row(u)); });
  return ok;
}

std::optional<Cover> greedyCover(const CoarseSpace& x, std::size_t i, std::size_t s, std::size_t n) {
  const std::size_t size = x.ground().size();
  const Relation& e = x.at(i);
  const Relation& bound = x.at(s);
  Blocks blocks(size, n + 1);
  for (std::size_t p = 0; p < size; ++p) {
    bool placed = false;
    for (std::size_t c = 0; c <= n && !placed; ++c) {
      auto hit = blocks.touching(c, e.row(p));
      PointSet merged(size);
      merged.insert(p);
      for (auto b : hit) merged |= blocks.set(b);
      if (!boundedSet(merged, bound)) continue;
      if (hit.empty()) {
        blocks.open(c, p);
      } else {
        for (std::size_t k = 1; k < hit.size(); ++k) blocks.merge(hit[0], hit[k]);
        blocks.add(hit[0], p);
      }
      placed = true;
    }
    if (!placed) return std::nullopt;
  }
  return blocks.toCover();
}

enum class Search { Found, Exhausted, OutOfBudget };

class ExactSearch {
 public:
  ExactSearch(const CoarseSpace& x, std::size_t i, std::size_t s, std::size_t n, std::size_t budget)
      : e_(x.at(i)), bound_(x.at(s)), size_(x.ground().size()), blocks_(size_, n + 1), budget_(budget) {}

  Search run() {
    Search r = place(0);
    return r;
  }
  Cover cover() const { return blocks_.toCover(); }

 private:
  Search place(std::size_t p) {
    if (p == size_) return Search::Found;
    if (nodes_++ >= budget_) return Search::OutOfBudget;
    bool seenEmptyFamily = false;
    for (std::size_t c = 0; c < blocks_.familyCount(); ++c) {
      const bool emptyFamily = blocks_.ofFamily(c).empty();
      // Empty families are interchangeable; try only the first.
      if (emptyFamily) {
        if (seenEmptyFamily) continue;
        seenEmptyFamily = true;
      }
      auto hit = blocks_.touching(c, e_.row(p));
      if (hit.size() > 1) continue;
      if (hit.size() == 1) {
        if (!fitsWith(blocks_.set(hit[0]), p, bound_)) continue;
        if (auto r = tryJoin(hit[0], p); r != Search::Exhausted) return r;
        continue;
      }
      const auto candidates = blocks_.ofFamily(c);
      for (std::size_t b : candidates) {
        if (!fitsWith(blocks_.set(b), p, bound_)) continue;
        if (auto r = tryJoin(b, p); r != Search::Exhausted) return r;
      }
      blocks_.open(c, p);
      auto r = place(p + 1);
      if (r != Search::Exhausted) return r;
      blocks_.remove(blocks_.ofFamily(c).back(), p);
      blocks_.closeLast();
    }
    return Search::Exhausted;
  }

  Search tryJoin(std::size_t b, std::size_t p) {
    blocks_.add(b, p);
    auto r = place(p + 1);
    if (r == Search::Exhausted) blocks_.remove(b, p);
    return r;
  }

  const Relation& e_;
  const Relation& bound_;
  std::size_t size_;
  Blocks blocks_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
};

void verifyOrThrow(const CoarseSpace& x, const ScaleCover& sc, std::size_t n) {
  const auto& c = sc.cover;
  if (c.families.size() != n + 1 || !coversGround(c, x.ground().size()) || !separatedCover(c, x.at(sc.scale)) ||
      uniformBoundScale(c, x) != sc.boundScale)
    throw VerificationBug(std::string("cover from ") + toString(sc.source) + " fails re-verification at scale " +
                          std::to_string(sc.scale));
}

struct ScaleOutcome {
  std::optional<ScaleCover> cover;
  bool exhausted = false;
};

ScaleOutcome searchScale(const CoarseSpace& x, std::size_t i, std::size_t n, const AsdimOptions& opt) {
  const std::size_t maxBound = opt.boundCap ? std::min(*opt.boundCap, x.topIndex()) : x.topIndex();
  auto finish = [&](Cover c, CoverSource src) {
    ScaleCover sc{i, uniformBoundScale(c, x), src, std::move(c)};
    verifyOrThrow(x, sc, n);
    return ScaleOutcome{std::move(sc), false};
  };

  for (auto& t : templatesFor(x, i, n)) {
    if (!separatedCover(t.cover, x.at(i))) continue;
    Scale b = uniformBoundScale(t.cover, x);
    if (templateAccepted(x, i, t, b, opt.boundCap)) return finish(std::move(t.cover), t.source);
  }
  for (std::size_t s = 0; s <= maxBound; ++s)
    if (auto c = greedyCover(x, i, s, n)) return finish(std::move(*c), CoverSource::Greedy);
  if (x.ground().size() > opt.exactCap) return {};
  bool exhaustedAll = true;
  for (std::size_t s = 0; s <= maxBound; ++s) {
    ExactSearch search(x, i, s, n, opt.nodeBudget);
    auto r = search.run();
    if (r == Search::Found) return finish(search.cover(), CoverSource::Exact);
    if (r == Search::OutOfBudget) exhaustedAll = false;
  }
  return ScaleOutcome{std::nullopt, exhaustedAll};
}

}  // namespace

AsdimResult asdimUpperWitness(const CoarseSpace& x, std::size_t n, const AsdimOptions& options) {
  std::vector<std::future<ScaleOutcome>> jobs;
  for (std::size_t i = 0; i < x.scaleCount(); ++i)
    jobs.push_back(std::async(std::launch::async, [&x, i, n, &options] { return searchScale(x, i, n, options); }));
  std::vector<ScaleOutcome> outcomes;
  for (auto& j : jobs) outcomes.push_back(j.get());

  AsdimResult out;
  out.n = n;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].cover) {
      out.perScale.push_back(std::move(*outcomes[i].cover));
      continue;
    }
    out.failedScale = i;
    out.verdict = outcomes[i].exhausted ? AsdimVerdict::ExhaustedExact : AsdimVerdict::GaveUpHeuristic;
    break;
  }
  return out;
}

bool asdimExactSmall(const CoarseSpace& x, std::size_t scale, std::size_t bound, std::size_t n) {
  if (x.ground().size() > 16)
    throw CapExceeded("exhaustive cover search is limited to 16 points, got " + std::to_string(x.ground().size()));
  if (scale >= x.scaleCount() || bound >= x.scaleCount()) throw InvalidArgument("scale index out of range");
  ExactSearch search(x, scale, bound, n, static_cast<std::size_t>(-1));
  return search.run() == Search::Found;
}

GroupAsdimReport groupAsdimCheck(const FiniteGroup& g, const IdealChain& ideal, std::size_t n,
                                 const AsdimOptions& options) {
  auto x = leftStructure(g, ideal);
  GroupAsdimReport out{asdimUpperWitness(x, n, options), true, std::nullopt};
  for (const auto& sc : out.result.perScale) {
    const PointSet& s = ideal.at(std::min(sc.scale, ideal.size() - 1));
    for (const auto& family : sc.cover.families)
      for (std::size_t a = 0; a < family.size(); ++a)
        for (std::size_t b = 0; b < family.size(); ++b)
          if (a != b && g.productSet(family[a], s).intersects(family[b])) out.sDisjointAgrees = false;
  }
  if (g.isAbelian()) out.freeRank = 0;
  return out;
}

}  // namespace coarse
