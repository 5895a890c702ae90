#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>

#include "coarse/errors.hpp"

namespace coarse {

/// Index into a coarse space's filtered chain, or NONE for "not an entourage".
/// NONE orders above every index, so max() and <= read as on [0, +inf].
class Scale {
 public:
  constexpr Scale() = default;
  constexpr explicit Scale(std::size_t index) : index_(index) {}

  static constexpr Scale none() { return Scale(); }

  constexpr bool isNone() const { return !index_.has_value(); }
  constexpr explicit operator bool() const { return index_.has_value(); }
  std::size_t index() const {
    if (!index_) throw InvalidArgument("scale is NONE");
    return *index_;
  }

  friend constexpr bool operator==(const Scale&, const Scale&) = default;
  friend constexpr std::strong_ordering operator<=>(const Scale& a, const Scale& b) {
    if (a.isNone() && b.isNone()) return std::strong_ordering::equal;
    if (a.isNone()) return std::strong_ordering::greater;
    if (b.isNone()) return std::strong_ordering::less;
    return *a.index_ <=> *b.index_;
  }

  std::string str() const { return index_ ? std::to_string(*index_) : std::string("NONE"); }

 private:
  std::optional<std::size_t> index_;
};

inline Scale maxScale(Scale a, Scale b) { return a < b ? b : a; }

}  // namespace coarse
