#include "coarse/relation.hpp"

#include <numeric>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

GroundSet::GroundSet() : impl_(std::make_shared<const Impl>()) {}

GroundSet::GroundSet(std::vector<std::string> labels) {
  auto impl = std::make_shared<Impl>();
  impl->index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!impl->index.emplace(labels[i], i).second)
      throw InvalidArgument("duplicate ground-set label '" + labels[i] + "'");
  }
  impl->labels = std::move(labels);
  impl_ = std::move(impl);
}

GroundSet GroundSet::range(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return GroundSet(std::move(labels));
}

std::optional<std::size_t> GroundSet::find(const std::string& label) const {
  auto it = impl_->index.find(label);
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

std::size_t GroundSet::indexOf(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw UnknownPoint("unknown point '" + label + "'");
}

void GroundSet::checkIndex(std::size_t i) const {
  if (i >= size())
    throw UnknownPoint("point index " + std::to_string(i) + " outside ground set of size " +
                       std::to_string(size()));
}

void GroundSet::checkSet(const PointSet& s) const {
  if (s.size() != size())
    throw UnknownPoint("point-set width " + std::to_string(s.size()) +
                       " does not match ground set of size " + std::to_string(size()));
}

PointSet GroundSet::setOf(std::span<const std::string> labels) const {
  PointSet s(size());
  for (const auto& l : labels) s.insert(indexOf(l));
  return s;
}

std::vector<std::string> GroundSet::labelsOf(const PointSet& s) const {
  std::vector<std::string> out;
  s.forEach([&](std::size_t i) { out.push_back(label(i)); });
  return out;
}

bool GroundSet::sameAs(const GroundSet& other) const {
  return impl_ == other.impl_ || impl_->labels == other.impl_->labels;
}

void requireSameGround(const GroundSet& a, const GroundSet& b, const char* context) {
  if (!a.sameAs(b))
    throw GroundSetMismatch(std::string(context) + ": operands live on different ground sets");
}

Relation::Relation(GroundSet ground)
    : ground_(std::move(ground)), rows_(ground_.size(), PointSet(ground_.size())) {}

Relation Relation::diagonal(const GroundSet& ground) {
  Relation r(ground);
  for (std::size_t i = 0; i < r.pointCount(); ++i) r.insert(i, i);
  return r;
}

Relation Relation::full(const GroundSet& ground) {
  Relation r(ground);
  for (auto& row : r.rows_) row.fill();
  return r;
}

Relation Relation::fromPairs(const GroundSet& ground, std::span<const IndexPair> pairs) {
  Relation r(ground);
  for (auto [a, b] : pairs) {
    ground.checkIndex(a);
    ground.checkIndex(b);
    r.insert(a, b);
  }
  return r;
}

std::size_t Relation::size() const {
  std::size_t n = 0;
  for (const auto& row : rows_) n += row.count();
  return n;
}

bool Relation::empty() const {
  for (const auto& row : rows_)
    if (!row.empty()) return false;
  return true;
}

std::vector<IndexPair> Relation::pairs() const {
  std::vector<IndexPair> out;
  for (std::size_t a = 0; a < rows_.size(); ++a) rows_[a].forEach([&](std::size_t b) { out.emplace_back(a, b); });
  return out;
}

bool Relation::isSubsetOf(const Relation& other) const {
  requireSameGround(ground_, other.ground_, "subset test");
  for (std::size_t a = 0; a < rows_.size(); ++a)
    if (!rows_[a].isSubsetOf(other.rows_[a])) return false;
  return true;
}

std::optional<IndexPair> Relation::firstPairOutside(const Relation& other) const {
  requireSameGround(ground_, other.ground_, "subset test");
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    std::size_t b = (rows_[a] - other.rows_[a]).first();
    if (b < pointCount()) return IndexPair{a, b};
  }
  return std::nullopt;
}

bool Relation::isReflexive() const {
  for (std::size_t a = 0; a < rows_.size(); ++a)
    if (!rows_[a].contains(a)) return false;
  return true;
}

bool Relation::isSymmetric() const { return *this == inverse(*this); }

bool Relation::isTransitive() const { return compose(*this, *this).isSubsetOf(*this); }

namespace {

// In-place transpose of a 64x64 bit matrix; bit c of word r is entry (r, c).
void transpose64(PointSet::Word a[64]) {
  PointSet::Word m = 0x00000000FFFFFFFFULL;
  for (unsigned j = 32; j != 0; j >>= 1, m ^= m << j) {
    for (unsigned k = 0; k < 64; k = ((k | j) + 1) & ~j) {
      PointSet::Word t = ((a[k] >> j) ^ a[k | j]) & m;
      a[k] ^= t << j;
      a[k | j] ^= t;
    }
  }
}

}  // namespace

Relation inverse(const Relation& e) {
  const std::size_t n = e.pointCount();
  Relation out(e.ground());
  const std::size_t blocks = PointSet::wordCount(n);
  PointSet::Word tile[64];
  for (std::size_t bi = 0; bi < blocks; ++bi) {
    for (std::size_t bj = 0; bj < blocks; ++bj) {
      bool any = false;
      for (std::size_t r = 0; r < 64; ++r) {
        std::size_t row = bi * 64 + r;
        tile[r] = row < n ? e.row(row).data()[bj] : 0;
        any = any || tile[r] != 0;
      }
      if (!any) continue;
      transpose64(tile);
      for (std::size_t c = 0; c < 64; ++c) {
        std::size_t row = bj * 64 + c;
        if (row < n) out.row(row).data()[bi] = tile[c];
      }
    }
  }
  return out;
}

RowPartition partitionRows(const Relation& e) {
  RowPartition p;
  const std::size_t n = e.pointCount();
  p.classOf.resize(n);
  std::unordered_map<std::size_t, std::vector<std::size_t>> byHash;
  for (std::size_t a = 0; a < n; ++a) {
    auto& bucket = byHash[e.row(a).hash()];
    std::size_t cls = p.representative.size();
    for (std::size_t c : bucket) {
      if (e.row(p.representative[c]) == e.row(a)) {
        cls = c;
        break;
      }
    }
    if (cls == p.representative.size()) {
      p.representative.push_back(a);
      bucket.push_back(cls);
    }
    p.classOf[a] = cls;
  }
  return p;
}

Relation compose(const Relation& e, const Relation& f) {
  requireSameGround(e.ground(), f.ground(), "compose");
  const std::size_t n = e.pointCount();
  Relation out(e.ground());
  if (n == 0) return out;

  // Each output row is the union of f-rows over the ball e[a]. When f has
  // few distinct rows (equivalence-like relations) it is cheaper to test each
  // class of rows once than to walk every member of the ball.
  RowPartition fp = partitionRows(f);
  std::vector<PointSet> classMembers(fp.classCount(), PointSet(n));
  for (std::size_t c = 0; c < n; ++c) classMembers[fp.classOf[c]].insert(c);

  for (std::size_t a = 0; a < n; ++a) {
    const PointSet& ball = e.row(a);
    PointSet& acc = out.row(a);
    if (fp.classCount() < ball.count()) {
      for (std::size_t k = 0; k < fp.classCount(); ++k)
        if (ball.intersects(classMembers[k])) acc |= f.row(fp.representative[k]);
    } else {
      ball.forEach([&](std::size_t c) { acc |= f.row(c); });
    }
  }
  return out;
}

Relation unionOf(const Relation& e, const Relation& f) {
  requireSameGround(e.ground(), f.ground(), "union");
  Relation out = e;
  for (std::size_t a = 0; a < out.pointCount(); ++a) out.row(a) |= f.row(a);
  return out;
}

Relation intersectionOf(const Relation& e, const Relation& f) {
  requireSameGround(e.ground(), f.ground(), "intersection");
  Relation out = e;
  for (std::size_t a = 0; a < out.pointCount(); ++a) out.row(a) &= f.row(a);
  return out;
}

PointSet ball(const Relation& e, std::size_t m) {
  e.ground().checkIndex(m);
  return e.row(m);
}

PointSet image(const Relation& e, const PointSet& n) {
  e.ground().checkSet(n);
  PointSet out(e.pointCount());
  n.forEach([&](std::size_t m) { out |= e.row(m); });
  return out;
}

Relation restrictTo(const Relation& e, const PointSet& s) {
  e.ground().checkSet(s);
  Relation out(e.ground());
  s.forEach([&](std::size_t a) { out.row(a) = e.row(a) & s; });
  return out;
}

Relation equivalenceClosure(const Relation& e) {
  const std::size_t n = e.pointCount();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto findRoot = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < n; ++a) {
    e.row(a).forEach([&](std::size_t b) {
      auto ra = findRoot(a), rb = findRoot(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    });
  }
  std::vector<PointSet> blocks(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto r = findRoot(a);
    if (blocks[r].size() == 0) blocks[r] = PointSet(n);
    blocks[r].insert(a);
  }
  Relation out(e.ground());
  for (std::size_t a = 0; a < n; ++a) out.row(a) = blocks[findRoot(a)];
  return out;
}

}  // namespace coarse
