#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace coarse {

/// Fixed-width dense bitset over the indices 0..size()-1 of a ground set.
///
/// This is the row type of every relation and the value type of every
/// point-set. Bits past size() in the last word are always zero, so word-wise
/// equality and popcount are exact.
class PointSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  PointSet() = default;
  explicit PointSet(std::size_t size) : size_(size), words_(wordCount(size), 0) {}
  PointSet(std::size_t size, std::initializer_list<std::size_t> members) : PointSet(size) {
    for (auto m : members) insert(m);
  }

  static PointSet full(std::size_t size) {
    PointSet s(size);
    s.fill();
    return s;
  }

  static std::size_t wordCount(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

  std::size_t size() const { return size_; }
  std::size_t wordSize() const { return words_.size(); }
  const Word* data() const { return words_.data(); }
  Word* data() { return words_.data(); }

  bool contains(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void insert(std::size_t i) { words_[i / kWordBits] |= Word{1} << (i % kWordBits); }
  void erase(std::size_t i) { words_[i / kWordBits] &= ~(Word{1} << (i % kWordBits)); }

  /// Sets every index in [first, last).
  void insertRange(std::size_t first, std::size_t last) {
    if (first >= last) return;
    std::size_t fw = first / kWordBits, lw = (last - 1) / kWordBits;
    Word lo = ~Word{0} << (first % kWordBits);
    Word hi = ~Word{0} >> (kWordBits - 1 - (last - 1) % kWordBits);
    if (fw == lw) {
      words_[fw] |= lo & hi;
      return;
    }
    words_[fw] |= lo;
    for (std::size_t w = fw + 1; w < lw; ++w) words_[w] = ~Word{0};
    words_[lw] |= hi;
  }

  void fill() {
    for (auto& w : words_) w = ~Word{0};
    trim();
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool isFull() const { return count() == size_; }

  bool isSubsetOf(const PointSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~other.words_[w]) return false;
    return true;
  }
  bool intersects(const PointSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & other.words_[w]) return true;
    return false;
  }

  PointSet& operator|=(const PointSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  PointSet& operator&=(const PointSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  /// Set difference.
  PointSet& operator-=(const PointSet& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

  /// Lexicographic order on (size, words); gives PointSet a total order for maps.
  friend bool operator<(const PointSet& a, const PointSet& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    return a.words_ < b.words_;
  }

  /// Smallest member, or size() when empty.
  std::size_t first() const { return nextFrom(0); }

  /// Smallest member >= i, or size() when there is none.
  std::size_t nextFrom(std::size_t i) const {
    if (i >= size_) return size_;
    std::size_t w = i / kWordBits;
    Word cur = words_[w] & (~Word{0} << (i % kWordBits));
    while (true) {
      if (cur) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
      if (++w >= words_.size()) return size_;
      cur = words_[w];
    }
  }

  template <class F>
  void forEach(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      Word cur = words_[w];
      while (cur) {
        f(w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur)));
        cur &= cur - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    forEach([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const {
    std::size_t h = size_ * 0x9E3779B97F4A7C15ULL;
    for (auto w : words_) h = (h ^ w) * 0x100000001B3ULL + (h >> 29);
    return h;
  }

 private:
  void trim() {
    if (size_ % kWordBits && !words_.empty()) words_.back() &= (Word{1} << (size_ % kWordBits)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace coarse
