#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bcd/bce.hpp"
#include "bcd/config.hpp"
#include "bcd/decomposition.hpp"
#include "bcd/formula.hpp"

namespace bcd {

// What rset_guided_decompose does when no guide clause is left but the
// formula is not empty even after an unrestricted BCE pass.
enum class StallPolicy {
  kThrow,     // PostconditionViolation
  kFallback,  // remaining clauses go to the right side
};

// Starting from a full BCE into L, repeatedly removes the lowest-id alive
// clause of `right_ids` into R and runs limited BCE on its touch set.
// R is a subset of `right_ids` unless the fallback kicks in.
Decomposition rset_guided_decompose(Formula f,
                                    std::span<const ClauseId> right_ids,
                                    const Config& cfg,
                                    const Deadline* deadline = nullptr,
                                    StallPolicy stall = StallPolicy::kThrow);

struct MoveResult {
  std::vector<ClauseId> left;   // sorted
  std::vector<ClauseId> right;  // sorted
  std::size_t moved = 0;
  std::size_t budget_hits = 0;
  // Elimination order solving `left`.
  BlockingTrace left_trace;
};

// Moves each clause C of `r_ids` (ascending id) to L when L + C is solvable
// by BCE. The test is incremental but answers exactly like re-running BCE on
// L + C. A nonzero `try_budget` caps the work per test; a capped test keeps C
// in R, though C still moves if it is blocked w.r.t. L. `budget_hits` counts
// capped tests. Throws InputError if the sides overlap or L is not
// BCE-solvable.
MoveResult move_blocked_clause(std::span<const ClauseId> l_ids,
                               std::span<const ClauseId> r_ids,
                               const Formula& f,
                               const Deadline* deadline = nullptr,
                               std::uint64_t try_budget = 0);

// Moves every clause of `r_ids` none of whose literals is a blocking literal
// recorded in `trace` for a clause of L. Empty clauses never move. The trace
// is left as is; throws InputError if a clause of L has no trace entry.
MoveResult move_blockable_clause(std::span<const ClauseId> l_ids,
                                 std::span<const ClauseId> r_ids,
                                 const Formula& f, const BlockingTrace& trace);

struct StageSnapshot {
  std::string label;
  std::size_t left = 0;
  std::size_t right = 0;
  Fraction fraction;
  double elapsed_ms = 0;
};

struct PipelineReport {
  // Components first ("pure", "minpure", "maxpure", optionally
  // "lessinterfere"), then "best", "rset_guided", and the move stages that
  // ran ("move_blocked", "move_blockable").
  std::vector<StageSnapshot> stages;
  Decomposition final;
  std::string best_component;
  bool less_interfere_ran = false;
  bool move_blocked_ran = false;
  // The LessInterfere-based result was asymmetric and was replaced by the
  // post-processed best pure-family component ("repair_" stages).
  bool repaired = false;
  bool symmetric = false;
  std::size_t blockable_moved = 0;
  std::size_t move_budget_hits = 0;
  std::size_t touch_drops = 0;

  const StageSnapshot* stage(std::string_view label) const;
};

// Runs the component decomposers, keeps the largest L, and grows it with the
// post-processors. Throws PostconditionViolation if a post-processing stage
// shrinks L. The final pair is normalized so that |L| >= |R|.
//
// Without the blockable move, an asymmetric result (possible only when
// LessInterfere wins) is replaced by the post-processed best pure-family
// split whenever that one is no smaller than the chosen component.
PipelineReport mix_decompose(const Formula& f, const Config& cfg,
                             const Deadline* deadline = nullptr);

}  // namespace bcd
