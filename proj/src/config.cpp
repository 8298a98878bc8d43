#include "bcd/config.hpp"

#include <algorithm>

#include "bcd/errors.hpp"

namespace bcd {

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kPure: return "pure";
    case Algorithm::kMinPure: return "minpure";
    case Algorithm::kMaxPure: return "maxpure";
    case Algorithm::kLessInterfere: return "lessinterfere";
    case Algorithm::kMix: return "mix";
  }
  return "?";
}

std::string_view to_string(Mode m) {
  return m == Mode::kRandom ? "random" : "application";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (Algorithm a : {Algorithm::kPure, Algorithm::kMinPure, Algorithm::kMaxPure,
                      Algorithm::kLessInterfere, Algorithm::kMix})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "application") return Mode::kApplication;
  if (s == "random") return Mode::kRandom;
  return std::nullopt;
}

std::optional<FinalMoveSkip> parse_final_move_skip(std::string_view s) {
  if (s == "auto") return FinalMoveSkip::kAuto;
  if (s == "on") return FinalMoveSkip::kOn;
  if (s == "off") return FinalMoveSkip::kOff;
  return std::nullopt;
}

std::optional<ScoreVariant> parse_score_variant(std::string_view s) {
  if (s == "complement") return ScoreVariant::kComplement;
  if (s == "as-written") return ScoreVariant::kAsWritten;
  return std::nullopt;
}

std::uint32_t Config::min_pure_gamma(Var num_vars) const {
  if (gamma_min) return *gamma_min;
  return num_vars < gamma_min_vars_cutoff ? gamma_min_small : gamma_min_large;
}

std::uint32_t Config::max_pure_gamma(Var num_vars) const {
  if (gamma_max) return *gamma_max;
  return num_vars < gamma_max_vars_cutoff ? gamma_max_small : gamma_max_large;
}

std::uint32_t Config::theta_for(std::size_t live_clauses) const {
  if (theta) return *theta;
  if (mode == Mode::kRandom) return theta_random;
  return live_clauses >= theta_large_cutoff ? theta_application_large
                                            : theta_application_small;
}

std::size_t Config::batch_size(std::size_t live_clauses) const {
  return std::max(p_floor, live_clauses / theta_for(live_clauses));
}

BceContext Config::bce_context(bool is_first, const Deadline* deadline) const {
  BceContext ctx;
  ctx.is_first = is_first;
  ctx.limit_occ = bce_limit_occ;
  ctx.limit_size = bce_limit_size;
  ctx.touch_full_threshold = bce_touch_full_threshold;
  ctx.deadline = deadline;
  return ctx;
}

void Config::validate() const {
  if ((gamma_min && *gamma_min == 0) || (gamma_max && *gamma_max == 0))
    throw InputError("gamma overrides must be positive");
  if (theta && *theta == 0) throw InputError("theta override must be positive");
  if (touch_cap && *touch_cap == 0)
    throw InputError("touch cap must be positive");
  if (timeout_s && !(*timeout_s > 0))
    throw InputError("timeout must be positive");
  if (forced_period == 0 || p_floor == 0)
    throw InputError("forced period and p floor must be positive");
}

}  // namespace bcd
