#include "bcd/bce.hpp"

#include <algorithm>

#include "bcd/errors.hpp"

namespace bcd {

TouchList TouchList::all_alive(const Formula& f,
                               std::optional<std::size_t> cap) {
  TouchList t(f.num_clauses(), cap);
  for (ClauseId id = 0; id < f.num_clauses(); ++id)
    if (f.alive(id)) t.seed(id);
  return t;
}

void TouchList::seed(ClauseId id) {
  if (pending_[id]) return;
  pending_[id] = 1;
  queue_.push_back(id);
}

bool TouchList::push(ClauseId id) {
  if (pending_[id]) return false;
  if (cap_ && queue_.size() >= *cap_) {
    ++drops_;
    return false;
  }
  pending_[id] = 1;
  queue_.push_back(id);
  return true;
}

std::optional<ClauseId> TouchList::pop() {
  if (queue_.empty()) return std::nullopt;
  const ClauseId id = queue_.front();
  queue_.pop_front();
  pending_[id] = 0;
  return id;
}

bool resolvent_tautology(const Clause& c, const Clause& d, Lit l) {
  if (!c.contains(l) || !d.contains(~l))
    throw InternalError("resolvent_tautology: pivot not in both clauses");
  std::vector<Lit> resolvent;
  resolvent.reserve(c.size() + d.size());
  for (Lit k : c.literals())
    if (k != l) resolvent.push_back(k);
  for (Lit k : d.literals())
    if (k != ~l) resolvent.push_back(k);
  return tautology(resolvent);
}

bool is_blocked(const Clause& c, Lit l, const Formula& f) {
  if (c.contains(~l)) return true;
  for (ClauseId id : f.occurrences(~l)) {
    if (id == c.id() || !f.alive(id)) continue;
    if (!resolvent_tautology(c, f.clause(id), l)) return false;
  }
  return true;
}

std::vector<ClauseId> touch(const Clause& c, const Formula& f,
                            const BceContext& ctx) {
  const bool full =
      ctx.is_first || f.num_alive() < ctx.touch_full_threshold;
  std::vector<ClauseId> out;
  for (Lit x : c.literals()) {
    if (!full && f.live_count(x) >= 2) continue;
    f.for_each_alive(~x, [&](ClauseId id) { out.push_back(id); });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void BceEngine::next_epoch() {
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

bool BceEngine::blocked(const Clause& c, Lit l, const Formula& f) {
  // A tautology keeps its complementary pair in every resolvent.
  if (c.is_tautology()) return true;
  if (f.live_count(~l) == 0) return true;
  next_epoch();
  for (Lit k : c.literals())
    if (k != l) stamp_[(~k).index()] = epoch_;
  for (ClauseId id : f.occurrences(~l)) {
    if (!f.alive(id)) continue;
    const Clause& d = f.clause(id);
    if (d.tautology_except(l.var())) continue;
    bool clash = false;
    for (Lit m : d.literals()) {
      if (m != ~l && stamp_[m.index()] == epoch_) {
        clash = true;
        break;
      }
    }
    if (!clash) return false;
  }
  return true;
}

void enqueue_touch(const Clause& c, const Formula& f, const BceContext& ctx,
                   TouchList& t) {
  const bool full =
      ctx.is_first || f.num_alive() < ctx.touch_full_threshold;
  for (Lit x : c.literals()) {
    if (!full && f.live_count(x) >= 2) continue;
    f.for_each_alive(~x, [&](ClauseId id) { t.push(id); });
  }
}

BlockingTrace BceEngine::run(TouchList& worklist, Formula& f,
                             std::vector<ClauseId>& eliminated,
                             const BceContext& ctx) {
  BlockingTrace trace;
  while (auto next = worklist.pop()) {
    if (ctx.deadline) ctx.deadline->poll();
    const ClauseId id = *next;
    if (!f.alive(id)) continue;
    const Clause& c = f.clause(id);
    // |F| is sampled once per dequeued clause.
    const bool every_literal = ctx.is_first || f.num_alive() < ctx.limit_size;
    for (Lit l : c.literals()) {
      if (!every_literal && f.live_count(~l) >= ctx.limit_occ) continue;
      if (!blocked(c, l, f)) continue;
      f.kill(id);
      eliminated.push_back(id);
      trace.entries.push_back({id, l});
      enqueue_touch(c, f, ctx, worklist);
      break;
    }
  }
  return trace;
}

BlockingTrace bce(TouchList& worklist, Formula& f,
                  std::vector<ClauseId>& eliminated, const BceContext& ctx) {
  BceEngine engine(f.num_vars());
  return engine.run(worklist, f, eliminated, ctx);
}

FixpointResult oracle_bce_fixpoint(const Formula& f,
                                   std::span<const ClauseId> scan_order) {
  Formula g = f.restricted_to(f.alive_ids());
  std::vector<ClauseId> order(scan_order.begin(), scan_order.end());
  if (order.empty()) order = g.alive_ids();

  FixpointResult out;
  bool changed = true;
  while (changed) {
    changed = false;
    for (ClauseId id : order) {
      if (!g.alive(id)) continue;
      const Clause& c = g.clause(id);
      for (Lit l : c.literals()) {
        if (!is_blocked(c, l, g)) continue;
        g.kill(id);
        out.trace.entries.push_back({id, l});
        changed = true;
        break;
      }
    }
  }
  out.surviving = g.alive_ids();
  for (const auto& e : out.trace.entries) out.eliminated.push_back(e.clause);
  std::sort(out.eliminated.begin(), out.eliminated.end());
  return out;
}

FullBceResult full_bce(Formula& f, const Deadline* deadline) {
  TouchList all = TouchList::all_alive(f);
  BceContext ctx;
  ctx.is_first = true;
  ctx.deadline = deadline;
  FullBceResult out;
  out.trace = bce(all, f, out.eliminated, ctx);
  return out;
}

bool verify_solvable(const Formula& f, std::span<const ClauseId> ids) {
  Formula sub = f.restricted_to(ids);
  full_bce(sub);
  return sub.empty();
}

}  // namespace bcd
