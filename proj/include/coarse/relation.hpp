#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coarse/point_set.hpp"

namespace coarse {

/// An immutable, ordered finite set of distinct labels.
///
/// Copies share one underlying table. Two ground sets are the same when they
/// share that table or carry identical label lists.
class GroundSet {
 public:
  GroundSet();
  explicit GroundSet(std::vector<std::string> labels);

  /// Ground set labelled "0", "1", ..., "n-1".
  static GroundSet range(std::size_t n);

  std::size_t size() const { return impl_->labels.size(); }
  bool empty() const { return size() == 0; }
  const std::string& label(std::size_t i) const { return impl_->labels.at(i); }
  const std::vector<std::string>& labels() const { return impl_->labels; }

  std::optional<std::size_t> find(const std::string& label) const;
  /// Throws UnknownPoint.
  std::size_t indexOf(const std::string& label) const;
  /// Throws UnknownPoint when i is out of range.
  void checkIndex(std::size_t i) const;
  void checkSet(const PointSet& s) const;

  PointSet noPoints() const { return PointSet(size()); }
  PointSet allPoints() const { return PointSet::full(size()); }
  PointSet setOf(std::span<const std::string> labels) const;
  std::vector<std::string> labelsOf(const PointSet& s) const;

  bool sameAs(const GroundSet& other) const;
  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.sameAs(b); }

 private:
  struct Impl {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Throws GroundSetMismatch unless a and b are the same ground set.
void requireSameGround(const GroundSet& a, const GroundSet& b, const char* context);

using IndexPair = std::pair<std::size_t, std::size_t>;

/// A binary relation on a ground set, stored as one bitset row per point:
/// row(a) is the ball {b : (a, b) in E}.
class Relation {
 public:
  explicit Relation(GroundSet ground);

  static Relation diagonal(const GroundSet& ground);
  static Relation full(const GroundSet& ground);
  static Relation fromPairs(const GroundSet& ground, std::span<const IndexPair> pairs);

  const GroundSet& ground() const { return ground_; }
  std::size_t pointCount() const { return rows_.size(); }

  bool contains(std::size_t a, std::size_t b) const { return rows_[a].contains(b); }
  void insert(std::size_t a, std::size_t b) { rows_[a].insert(b); }
  const PointSet& row(std::size_t a) const { return rows_[a]; }
  PointSet& row(std::size_t a) { return rows_[a]; }

  /// Number of pairs.
  std::size_t size() const;
  bool empty() const;
  std::vector<IndexPair> pairs() const;

  bool isSubsetOf(const Relation& other) const;
  bool isReflexive() const;
  bool isSymmetric() const;
  bool isTransitive() const;

  /// First pair of *this missing from other, if any.
  std::optional<IndexPair> firstPairOutside(const Relation& other) const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.ground_ == b.ground_ && a.rows_ == b.rows_;
  }

 private:
  GroundSet ground_;
  std::vector<PointSet> rows_;
};

Relation inverse(const Relation& e);
/// {(a, b) : exists c with (a, c) in e and (c, b) in f}.
Relation compose(const Relation& e, const Relation& f);
Relation unionOf(const Relation& e, const Relation& f);
Relation intersectionOf(const Relation& e, const Relation& f);
/// The ball e[m].
PointSet ball(const Relation& e, std::size_t m);
/// e[N], the union of the balls around the members of n.
PointSet image(const Relation& e, const PointSet& n);
/// Restriction to pairs inside s x s.
Relation restrictTo(const Relation& e, const PointSet& s);
/// Least equivalence relation containing e.
Relation equivalenceClosure(const Relation& e);

/// Groups the rows of a relation by content: rows a and b share a class iff
/// row(a) == row(b). Lets kernels skip work on repeated rows.
struct RowPartition {
  std::vector<std::size_t> classOf;
  std::vector<std::size_t> representative;
  std::size_t classCount() const { return representative.size(); }
};
RowPartition partitionRows(const Relation& e);

}  // namespace coarse
