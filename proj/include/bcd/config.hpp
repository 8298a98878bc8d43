#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "bcd/bce.hpp"

namespace bcd {

enum class Algorithm { kPure, kMinPure, kMaxPure, kLessInterfere, kMix };

// Instance family; selects the theta schedule of LessInterfereDecompose.
enum class Mode { kApplication, kRandom };

// How compute_scores counts interference. kComplement pairs a literal with
// occurrences of its negation; kAsWritten counts same-polarity
// co-occurrence.
enum class ScoreVariant { kComplement, kAsWritten };

// Whether MixDecompose skips the final MoveBlockedClause pass.
enum class FinalMoveSkip { kAuto, kOn, kOff };

std::string_view to_string(Algorithm a);
std::string_view to_string(Mode m);
std::optional<Algorithm> parse_algorithm(std::string_view s);
std::optional<Mode> parse_mode(std::string_view s);
std::optional<FinalMoveSkip> parse_final_move_skip(std::string_view s);
std::optional<ScoreVariant> parse_score_variant(std::string_view s);

struct Config {
  Algorithm algo = Algorithm::kMix;
  Mode mode = Mode::kApplication;
  bool blockable = false;
  std::optional<std::uint32_t> gamma_min;
  std::optional<std::uint32_t> gamma_max;
  std::optional<std::uint32_t> theta;
  std::optional<std::size_t> touch_cap;
  FinalMoveSkip skip_final_move = FinalMoveSkip::kAuto;
  std::optional<double> timeout_s;
  ScoreVariant score_variant = ScoreVariant::kComplement;

  // MinPureDecompose: every `forced_period`-th selection follows variable
  // order; the scan window is gamma_min_small below `gamma_min_vars_cutoff`
  // variables and gamma_min_large otherwise.
  std::uint32_t forced_period = 5;
  std::uint32_t gamma_min_small = 30000;
  std::uint32_t gamma_min_large = 1500;
  std::size_t gamma_min_vars_cutoff = 70000;

  std::uint32_t gamma_max_small = 5000;
  std::uint32_t gamma_max_large = 500;
  std::size_t gamma_max_vars_cutoff = 800000;

  // LessInterfereDecompose batch size p = max(p_floor, |F| / theta).
  std::uint32_t theta_application_large = 200;
  std::uint32_t theta_application_small = 2300;
  std::size_t theta_large_cutoff = 800000;
  std::uint32_t theta_random = 400;
  std::size_t p_floor = 18;

  // MixDecompose size gates.
  std::size_t less_interfere_max_clauses = 5000000;
  std::size_t less_interfere_max_vars = 1000000;
  std::size_t final_move_max_clauses = 10000000;

  // Work cap for one exact MoveBlockedClause test; a clause whose test runs
  // past it stays in R. 0 means unlimited.
  std::uint64_t move_try_budget = 32768;

  // Limited BCE thresholds.
  std::uint32_t bce_limit_occ = 2;
  std::size_t bce_limit_size = 300000;
  std::size_t bce_touch_full_threshold = 800000;

  std::uint32_t min_pure_gamma(Var num_vars) const;
  std::uint32_t max_pure_gamma(Var num_vars) const;
  std::uint32_t theta_for(std::size_t live_clauses) const;
  std::size_t batch_size(std::size_t live_clauses) const;
  BceContext bce_context(bool is_first, const Deadline* deadline) const;

  // Throws InputError if an override is zero.
  void validate() const;
};

}  // namespace bcd
