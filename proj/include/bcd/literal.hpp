#pragma once

#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <ostream>

namespace bcd {

using Var = std::uint32_t;
using ClauseId = std::uint32_t;

// A signed DIMACS literal. Positive values denote x, negative values denote
// the negation of x. Zero is not a literal.
class Lit {
 public:
  constexpr Lit() = default;
  constexpr explicit Lit(int value) : value_(value) { assert(value != 0); }

  static constexpr Lit positive(Var v) { return Lit(static_cast<int>(v)); }
  static constexpr Lit negative(Var v) { return Lit(-static_cast<int>(v)); }

  constexpr int value() const { return value_; }
  constexpr Var var() const {
    return static_cast<Var>(value_ < 0 ? -value_ : value_);
  }
  constexpr bool is_negative() const { return value_ < 0; }
  constexpr Lit operator~() const { return Lit(-value_); }

  // Dense index into per-literal tables: 2*(var-1) for x, 2*(var-1)+1 for ~x.
  constexpr std::size_t index() const {
    return 2 * (static_cast<std::size_t>(var()) - 1) + (is_negative() ? 1 : 0);
  }
  static constexpr Lit from_index(std::size_t index) {
    const auto v = static_cast<int>(index / 2 + 1);
    return Lit((index & 1) != 0 ? -v : v);
  }

  friend constexpr bool operator==(Lit a, Lit b) = default;
  friend constexpr auto operator<=>(Lit a, Lit b) = default;

 private:
  int value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, Lit l) {
  return os << l.value();
}

}  // namespace bcd

template <>
struct std::hash<bcd::Lit> {
  std::size_t operator()(bcd::Lit l) const noexcept {
    return std::hash<int>{}(l.value());
  }
};
