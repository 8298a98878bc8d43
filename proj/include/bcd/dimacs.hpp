#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bcd/formula.hpp"

namespace bcd {

struct DimacsInfo {
  Var header_vars = 0;
  std::size_t header_clauses = 0;
  bool has_empty_clause = false;
  std::vector<std::string> warnings;
};

// Parses DIMACS CNF. Throws ParseError on a missing or malformed header or on
// a non-integer token. A clause-count mismatch against the header and a
// missing final terminator are tolerated and reported through `info`.
Formula parse_dimacs(std::string_view text, DimacsInfo* info = nullptr);

// Emits the selected clauses in the given order: "p cnf V N" where V is the
// largest variable used, then one clause per line terminated by " 0".
std::string serialize_dimacs(const Formula& f, std::span<const ClauseId> ids);

}  // namespace bcd
