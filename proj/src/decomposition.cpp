#include "bcd/decomposition.hpp"

#include <algorithm>

namespace bcd {

void Decomposition::normalize() {
  if (left.size() >= right.size()) return;
  std::swap(left, right);
  left_trace.reset();
}

void Decomposition::sort_sides() {
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
}

bool is_partition(const Decomposition& d, const Formula& f) {
  std::vector<char> seen(f.num_clauses(), 0);
  for (const auto* side : {&d.left, &d.right}) {
    for (ClauseId id : *side) {
      if (!f.contains_id(id) || !f.alive(id) || seen[id]) return false;
      seen[id] = 1;
    }
  }
  return d.total() == f.num_alive();
}

}  // namespace bcd
