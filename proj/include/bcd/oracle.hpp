#pragma once

#include <cstdint>
#include <vector>

#include "bcd/formula.hpp"

// Brute-force references for tests. Nothing here is used by the tools.
namespace bcd {

struct MaxBsResult {
  std::vector<ClauseId> best_ids;  // sorted
  std::size_t best_size = 0;
  std::uint64_t explored = 0;      // subsets tested
};

// Largest subset of the alive clauses that BCE solves, found by testing
// subsets in decreasing size. Throws TooLarge above 18 alive clauses.
MaxBsResult oracle_max_blocked_subset(const Formula& f);

struct OracleScore {
  // Non-tautological resolvents of the clause with the other alive clauses.
  std::uint64_t exact = 0;
  // Sum over alive C' of |{l in C : ~l in C'}|.
  std::uint64_t approx = 0;
  // As `approx`, counting only literals l with the minimum live occurrence
  // count among occurring literals.
  std::uint64_t restricted = 0;
};

// Indexed by clause id; dead clauses score zero. Throws TooLarge above 500
// alive clauses.
std::vector<OracleScore> oracle_score(const Formula& f);

// Truth-table check over the alive clauses. Throws TooLarge above 20
// variables.
bool oracle_satisfiable(const Formula& f);

}  // namespace bcd
