#pragma once

#include <vector>

#include "bcd/formula.hpp"

namespace bcd {

struct UnitSimplified {
  Formula formula;
  // Forced literals in propagation order.
  std::vector<Lit> trail;
};

// Propagates unit clauses to fixpoint and rebuilds the formula: satisfied
// clauses are dropped, falsified literals are stripped, and one unit clause
// per forced literal is kept (first, in trail order). Surviving clauses keep
// their relative order. Empty input clauses are carried over untouched.
// Throws ConflictDetected when propagation forces both x and ~x.
UnitSimplified unit_simplify(const Formula& f);

}  // namespace bcd
