#include "bcd/decompose.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "bcd/errors.hpp"

namespace bcd {
namespace {

bool var_live(const Formula& f, Var v) {
  return f.live_count(Lit::positive(v)) + f.live_count(Lit::negative(v)) > 0;
}

// Moves the larger of F_v, F_~v (positive side on ties) to the left and the
// rest of the clauses containing v to the right. `on_kill` sees every clause
// before it dies.
template <typename OnKill>
void eliminate_var(Formula& f, Var v, Decomposition& d, OnKill&& on_kill) {
  const Lit pos = Lit::positive(v);
  const Lit larger = f.live_count(pos) >= f.live_count(~pos) ? pos : ~pos;
  for (ClauseId id : f.alive_occurrences(larger)) {
    on_kill(f.clause(id));
    f.kill(id);
    d.left.push_back(id);
  }
  for (ClauseId id : f.alive_occurrences(~larger)) {
    on_kill(f.clause(id));
    f.kill(id);
    d.right.push_back(id);
  }
}

void eliminate_var(Formula& f, Var v, Decomposition& d) {
  eliminate_var(f, v, d, [](const Clause&) {});
}

// Whatever is still alive has no literals left to eliminate on.
void finish(Formula& f, Decomposition& d) {
  for (ClauseId id : f.alive_ids()) {
    f.kill(id);
    d.right.push_back(id);
  }
  d.sort_sides();
}

Var next_var(Var v, Var n) { return v >= n ? 1 : v + 1; }

// Visits `width` variables cyclically from `start`, calling visit(v) on the
// live ones. If none is live, skips ahead to the next live variable and scans
// `width` variables from there. Returns false when no variable is live.
template <typename Visit>
bool scan_window(const Formula& f, Var start, std::size_t width,
                 Visit&& visit) {
  const Var n = f.num_vars();
  if (n == 0) return false;
  width = std::min<std::size_t>(width, n);
  if (start < 1 || start > n) start = 1;

  Var v = start;
  bool any = false;
  for (std::size_t i = 0; i < width; ++i, v = next_var(v, n)) {
    if (!var_live(f, v)) continue;
    any = true;
    visit(v);
  }
  if (any) return true;

  std::size_t skipped = width;
  while (skipped < n && !var_live(f, v)) {
    v = next_var(v, n);
    ++skipped;
  }
  if (skipped == n) return false;
  for (std::size_t i = 0; i < width; ++i, v = next_var(v, n))
    if (var_live(f, v)) visit(v);
  return true;
}

class ForcedOrder {
 public:
  // Lowest live variable, or 0 if none. Variables never come back to life.
  Var next(const Formula& f) {
    while (cursor_ <= f.num_vars() && !var_live(f, cursor_)) ++cursor_;
    return cursor_ <= f.num_vars() ? cursor_ : 0;
  }

 private:
  Var cursor_ = 1;
};

}  // namespace

Decomposition pure_decompose(Formula f, const Deadline* deadline) {
  Stopwatch watch;
  Decomposition d;
  d.algorithm = "pure";
  for (Var v = 1; v <= f.num_vars() && !f.empty(); ++v) {
    if (deadline) deadline->poll();
    if (var_live(f, v)) eliminate_var(f, v, d);
  }
  finish(f, d);
  d.phase_times.emplace_back("total", watch.seconds());
  return d;
}

Decomposition min_pure_decompose(Formula f, const Config& cfg,
                                 const Deadline* deadline,
                                 std::vector<PureStep>* steps) {
  Stopwatch watch;
  Decomposition d;
  d.algorithm = "minpure";
  const std::size_t width =
      static_cast<std::size_t>(cfg.min_pure_gamma(f.num_vars())) + 1;

  // Sum of |C| over live clauses containing each literal.
  std::vector<std::uint64_t> size_sum(2 * static_cast<std::size_t>(f.num_vars()), 0);
  for (ClauseId id = 0; id < f.num_clauses(); ++id) {
    const Clause& c = f.clause(id);
    if (!c.alive()) continue;
    for (Lit l : c.literals()) size_sum[l.index()] += c.size();
  }
  auto on_kill = [&](const Clause& c) {
    for (Lit l : c.literals()) size_sum[l.index()] -= c.size();
  };

  ForcedOrder forced;
  Var anchor = 1;
  for (std::uint64_t k = 0; !f.empty(); ++k) {
    if (deadline) deadline->poll();
    Var chosen = 0;
    Lit chosen_lit;
    const bool is_forced = k % cfg.forced_period == 0;
    if (is_forced) {
      chosen = forced.next(f);
      if (chosen == 0) break;
      chosen_lit = Lit::positive(chosen);
    } else {
      using Key = std::tuple<std::uint32_t, std::uint64_t, Var, bool>;
      Key best{std::numeric_limits<std::uint32_t>::max(), 0, 0, false};
      const bool found = scan_window(f, anchor, width, [&](Var v) {
        for (Lit l : {Lit::positive(v), Lit::negative(v)}) {
          const std::uint32_t occ = f.live_count(l);
          if (occ == 0) continue;
          const Key key{occ, size_sum[l.index()], v, l.is_negative()};
          if (key < best) {
            best = key;
            chosen_lit = l;
          }
        }
      });
      if (!found) break;
      chosen = chosen_lit.var();
      anchor = chosen;
    }
    if (steps) steps->push_back({chosen_lit, is_forced});
    eliminate_var(f, chosen, d, on_kill);
  }
  finish(f, d);
  d.phase_times.emplace_back("total", watch.seconds());
  return d;
}

Decomposition max_pure_decompose(Formula f, const Config& cfg,
                                 const Deadline* deadline,
                                 std::vector<PureStep>* steps) {
  Stopwatch watch;
  Decomposition d;
  d.algorithm = "maxpure";
  const std::size_t width =
      static_cast<std::size_t>(cfg.max_pure_gamma(f.num_vars())) + 1;

  Var anchor = 1;
  while (!f.empty()) {
    if (deadline) deadline->poll();
    // Larger occurrence first (negated for min-ordering), then the smaller
    // difference between the two polarities, then the variable index.
    using Key = std::tuple<std::int64_t, std::uint32_t, Var>;
    Key best{1, 0, 0};
    Lit chosen_lit;
    const bool found = scan_window(f, anchor, width, [&](Var v) {
      const std::uint32_t pos = f.live_count(Lit::positive(v));
      const std::uint32_t neg = f.live_count(Lit::negative(v));
      const Key key{-static_cast<std::int64_t>(std::max(pos, neg)),
                    pos > neg ? pos - neg : neg - pos, v};
      if (key < best) {
        best = key;
        chosen_lit = pos >= neg ? Lit::positive(v) : Lit::negative(v);
      }
    });
    if (!found) break;
    anchor = chosen_lit.var();
    if (steps) steps->push_back({chosen_lit, false});
    eliminate_var(f, chosen_lit.var(), d);
  }
  finish(f, d);
  d.phase_times.emplace_back("total", watch.seconds());
  return d;
}

void compute_scores(Formula& f, ScoreVariant variant) {
  f.reset_scores();
  std::uint32_t m = std::numeric_limits<std::uint32_t>::max();
  for (Var v = 1; v <= f.num_vars(); ++v) {
    for (Lit l : {Lit::positive(v), Lit::negative(v)}) {
      const std::uint32_t occ = f.live_count(l);
      if (occ > 0) m = std::min(m, occ);
    }
  }
  if (m == std::numeric_limits<std::uint32_t>::max()) return;

  for (ClauseId id = 0; id < f.num_clauses(); ++id) {
    const Clause& e = f.clause(id);
    if (!e.alive()) continue;
    std::uint64_t score = 0;
    for (Lit k : e.literals()) {
      if (f.live_count(k) != m) continue;
      score += variant == ScoreVariant::kComplement ? f.live_count(~k) : m;
    }
    if (score) f.add_score(id, score);
  }
}

CandidateSet select_candidates(std::span<const std::uint64_t> scores,
                               std::span<const ClauseId> ids, std::size_t p) {
  if (p == 0) throw InputError("select_candidates: p must be positive");
  if (scores.size() != ids.size())
    throw InternalError("select_candidates: score/id length mismatch");
  CandidateSet out;
  if (ids.empty()) return out;

  std::vector<std::uint64_t> work(scores.begin(), scores.end());
  if (p >= work.size()) {
    out.alpha = *std::min_element(work.begin(), work.end());
  } else {
    auto nth = work.begin() + static_cast<std::ptrdiff_t>(p - 1);
    std::nth_element(work.begin(), nth, work.end(), std::greater<>());
    out.alpha = *nth;
  }
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (scores[i] >= out.alpha) out.ids.push_back(ids[i]);
  std::sort(out.ids.begin(), out.ids.end());
  return out;
}

CandidateSet select_candidates(const Formula& f, std::size_t p) {
  const std::vector<ClauseId> ids = f.alive_ids();
  std::vector<std::uint64_t> scores;
  scores.reserve(ids.size());
  for (ClauseId id : ids) scores.push_back(f.clause(id).score());
  return select_candidates(scores, ids, p);
}

Decomposition less_interfere_decompose(Formula f, const Config& cfg,
                                       const Deadline* deadline) {
  Stopwatch watch;
  Decomposition d;
  d.algorithm = "lessinterfere";
  d.left_trace.emplace();

  BceEngine engine(f.num_vars());
  const BceContext first = cfg.bce_context(true, deadline);
  const BceContext later = cfg.bce_context(false, deadline);

  TouchList work = TouchList::all_alive(f, cfg.touch_cap);
  d.left_trace->append(engine.run(work, f, d.left, first));
  d.phase_times.emplace_back("initial_bce", watch.seconds());

  double scoring = 0;
  CandidateSet candidates;
  std::size_t cursor = 0;
  while (!f.empty()) {
    if (deadline) deadline->poll();
    while (cursor < candidates.ids.size() && !f.alive(candidates.ids[cursor]))
      ++cursor;
    if (cursor == candidates.ids.size()) {
      Stopwatch score_watch;
      compute_scores(f, cfg.score_variant);
      candidates = select_candidates(f, cfg.batch_size(f.num_alive()));
      // A zero threshold would admit every clause; keep only interfering
      // clauses while there are any.
      if (candidates.alpha == 0) {
        std::vector<ClauseId> scored;
        for (ClauseId id : candidates.ids)
          if (f.clause(id).score() > 0) scored.push_back(id);
        if (!scored.empty()) candidates.ids = std::move(scored);
      }
      cursor = 0;
      scoring += score_watch.seconds();
      if (candidates.ids.empty())
        throw InternalError("less_interfere_decompose: empty candidate set");
    }
    const ClauseId pick = candidates.ids[cursor++];
    f.kill(pick);
    d.right.push_back(pick);
    enqueue_touch(f.clause(pick), f, later, work);
    d.left_trace->append(engine.run(work, f, d.left, later));
  }
  d.touch_drops = work.drops();
  d.sort_sides();
  d.phase_times.emplace_back("scoring", scoring);
  d.phase_times.emplace_back("total", watch.seconds());
  return d;
}

}  // namespace bcd
