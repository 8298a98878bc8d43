#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bcd/bce.hpp"
#include "bcd/formula.hpp"

namespace bcd {

// |L| / |F| kept exact. An empty formula has fraction 1.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 0;

  double value() const {
    return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
  }
  double percent() const { return 100.0 * value(); }

  // Exact comparison by cross-multiplication.
  friend bool operator<(const Fraction& a, const Fraction& b) {
    const auto an = a.den == 0 ? 1 : a.num, ad = a.den == 0 ? 1 : a.den;
    const auto bn = b.den == 0 ? 1 : b.num, bd = b.den == 0 ? 1 : b.den;
    return an * bd < bn * ad;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) {
    return !(b < a);
  }
};

struct Decomposition {
  std::string algorithm;
  std::vector<ClauseId> left;   // sorted
  std::vector<ClauseId> right;  // sorted
  std::vector<std::pair<std::string, double>> phase_times;  // seconds
  // Elimination order of `left`, when the algorithm built one.
  std::optional<BlockingTrace> left_trace;
  std::size_t touch_drops = 0;

  std::size_t total() const { return left.size() + right.size(); }
  Fraction fraction() const { return {left.size(), total()}; }

  // Swaps the sides if the left one is smaller.
  void normalize();
  void sort_sides();
};

// left and right are disjoint and together cover the alive clauses of `f`.
bool is_partition(const Decomposition& d, const Formula& f);

}  // namespace bcd
