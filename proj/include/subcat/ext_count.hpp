#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace subcat {

/// A count in {0, 1, 2, …} ∪ {∞}. Used for grade, length and height.
struct ExtCount {
  bool infinite = false;
  std::uint64_t value = 0;

  static constexpr ExtCount finite(std::uint64_t v) { return {false, v}; }
  static constexpr ExtCount infinity() { return {true, 0}; }

  bool is_finite() const { return !infinite; }

  friend bool operator==(const ExtCount& a, const ExtCount& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend std::strong_ordering operator<=>(const ExtCount& a, const ExtCount& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite ? std::strong_ordering::equal
                                         : a.infinite              ? std::strong_ordering::greater
                                                                   : std::strong_ordering::less;
    return a.value <=> b.value;
  }

  std::string to_string() const { return infinite ? "inf" : std::to_string(value); }
};

}  // namespace subcat
