#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bcd/config.hpp"
#include "bcd/decomposition.hpp"
#include "bcd/formula.hpp"

namespace bcd {

// One variable elimination of a pure-style decomposer.
struct PureStep {
  Lit chosen;          // literal that won the selection (for forced steps, +var)
  bool forced = false; // picked in variable order rather than by occurrence
};

// All decomposers consume their formula: pass a copy to keep the original.
// Clauses without literals (empty clauses) always land on the right.

// Per variable in ascending order: the larger of F_x, F_~x goes left, the
// other right. Ties go to the positive side.
Decomposition pure_decompose(Formula f, const Deadline* deadline = nullptr);

// Every forced_period-th selection (starting with the first) takes the
// lowest live variable; the others take the literal with the fewest live
// occurrences inside a window of gamma+1 variables starting at the previous
// windowed selection, breaking ties by total size of the clauses containing
// it, then by variable index. The window wraps around past the last variable.
Decomposition min_pure_decompose(Formula f, const Config& cfg,
                                 const Deadline* deadline = nullptr,
                                 std::vector<PureStep>* steps = nullptr);

// Takes the variable whose more frequent literal has the most live
// occurrences inside the window, breaking ties by the smallest difference of
// its two literal counts, then by variable index.
Decomposition max_pure_decompose(Formula f, const Config& cfg,
                                 const Deadline* deadline = nullptr,
                                 std::vector<PureStep>* steps = nullptr);

// Interference scores restricted to literals of minimum live occurrence m.
// kComplement: score[e] = sum over k in e with live_count(k) == m of
// live_count(~k). kAsWritten: score[e] = m * |{k in e : live_count(k) == m}|.
// Scores of every clause are reset first.
void compute_scores(Formula& f,
                    ScoreVariant variant = ScoreVariant::kComplement);

struct CandidateSet {
  std::uint64_t alpha = 0;
  std::vector<ClauseId> ids;  // sorted
};

// alpha is the p-th highest score (the minimum if there are fewer than p
// entries); the set holds every entry scoring at least alpha.
CandidateSet select_candidates(std::span<const std::uint64_t> scores,
                               std::span<const ClauseId> ids, std::size_t p);
CandidateSet select_candidates(const Formula& f, std::size_t p);

Decomposition less_interfere_decompose(Formula f, const Config& cfg,
                                       const Deadline* deadline = nullptr);

}  // namespace bcd
