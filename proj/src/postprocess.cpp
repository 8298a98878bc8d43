#include "bcd/postprocess.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "bcd/decompose.hpp"
#include "bcd/errors.hpp"

namespace bcd {
namespace {

// Marks the members of both sides; throws InputError on overlap or unknown
// ids.
std::vector<char> check_sides(std::span<const ClauseId> l_ids,
                              std::span<const ClauseId> r_ids,
                              const Formula& f) {
  std::vector<char> side(f.num_clauses(), 0);
  for (ClauseId id : l_ids) {
    if (!f.contains_id(id)) throw InputError("unknown clause id in L");
    if (side[id]) throw InputError("duplicate clause id in L");
    side[id] = 1;
  }
  for (ClauseId id : r_ids) {
    if (!f.contains_id(id)) throw InputError("unknown clause id in R");
    if (side[id]) throw InputError("clause id in both L and R");
    side[id] = 2;
  }
  return side;
}

// A BCE-solvable clause set together with one elimination order for it,
// kept as a linked list with gapped labels so clauses can be spliced in
// anywhere. Member e with blocking literal b is blocked on b w.r.t. itself
// and the members after it.
class SolvableSet {
 public:
  SolvableSet(const Formula& f, std::span<const ClauseId> ids)
      : f_(f),
        label_(f.num_clauses(), 0),
        blocking_(f.num_clauses()),
        prev_(f.num_clauses(), kNil),
        next_(f.num_clauses(), kNil),
        by_blocking_(2 * static_cast<std::size_t>(f.num_vars())),
        seen_(f.num_clauses(), 0),
        stuck_mark_(f.num_clauses(), 0),
        remaining_(f.num_clauses(), 0),
        queued_(f.num_clauses(), 0),
        lit_stamp_(2 * static_cast<std::size_t>(f.num_vars()), 0),
        stuck_occ_(2 * static_cast<std::size_t>(f.num_vars())) {
    Formula sub = f.restricted_to(ids);
    const FullBceResult res = full_bce(sub);
    if (!sub.empty()) throw InputError("left side is not solvable by BCE");
    place(res.trace.entries, kNil);
  }

  // Adds `id` if the set stays solvable.
  //
  // Walking the order, a member stays removable at its position unless it
  // resolves non-tautologically on its blocking literal with `id` or with an
  // earlier member that is itself no longer removable ("stuck"). Members
  // before position r that are not stuck can still go first, so the set plus
  // `id` is solvable as soon as the stuck clauses plus `id` can be eliminated
  // against the members from r on; they are then spliced in before r. If the
  // stuck clauses plus `id` are not solvable on their own, no superset is.
  // The first check covers `id` being blocked w.r.t. the whole set; later
  // ones are skipped once `budget` (if nonzero) is spent.
  enum class Outcome { kAdded, kRejected, kOverBudget };
  Outcome try_add(ClauseId id, std::uint64_t budget) {
    const Clause& c = f_.clause(id);
    if (c.empty()) return Outcome::kRejected;
    next_epoch(seen_, epoch_);
    work_ = 0;

    std::vector<ClauseId> stuck{id};
    add_stuck(c);
    Heap heap;
    for (Lit m : c.literals()) queue_blocked_on(~m, 0, heap);

    std::vector<BlockingTrace::Entry> order;
    std::size_t next_check = 1;
    Outcome result = Outcome::kRejected;
    while (true) {
      const bool done = heap.empty();
      if (done || stuck.size() >= next_check) {
        next_check = 2 * stuck.size();
        order.clear();
        if (!flush(stuck, kEnd, order)) break;
        if (done) {
          place(order, kNil);
          result = Outcome::kAdded;
          break;
        }
        order.clear();
        if (flush(stuck, heap.top().first, order)) {
          place(order, heap.top().second);
          result = Outcome::kAdded;
          break;
        }
        if (budget != 0 && work_ > budget) {
          result = Outcome::kOverBudget;
          break;
        }
      }
      const auto [label, eid] = heap.top();
      heap.pop();
      ++work_;
      if (!stuck_at(eid)) continue;
      stuck.push_back(eid);
      add_stuck(f_.clause(eid));
      for (Lit m : f_.clause(eid).literals()) queue_blocked_on(~m, label, heap);
    }

    for (std::size_t i : touched_lits_) stuck_occ_[i].clear();
    touched_lits_.clear();
    return result;
  }

  std::vector<ClauseId> members() const {
    std::vector<ClauseId> out;
    for (ClauseId id = head_; id != kNil; id = next_[id]) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
  }

  BlockingTrace trace() const {
    BlockingTrace t;
    for (ClauseId id = head_; id != kNil; id = next_[id])
      t.entries.push_back({id, blocking_[id]});
    return t;
  }

 private:
  static constexpr ClauseId kNil = std::numeric_limits<ClauseId>::max();
  static constexpr std::uint64_t kEnd = std::numeric_limits<std::uint64_t>::max();
  static constexpr std::uint64_t kGap = std::uint64_t{1} << 20;
  using Entry = std::pair<std::uint64_t, ClauseId>;
  using Heap = std::priority_queue<Entry, std::vector<Entry>, std::greater<>>;

  static void next_epoch(std::vector<std::uint32_t>& marks, std::uint32_t& epoch) {
    if (++epoch == 0) {
      std::fill(marks.begin(), marks.end(), 0);
      epoch = 1;
    }
  }

  bool member(ClauseId id) const { return label_[id] != 0; }

  // Whether the resolvent of c and d on l (l in c, ~l in d) is a tautology.
  bool taut_resolvent(const Clause& c, Lit l, const Clause& d) {
    ++work_;
    if (c.tautology_except(l.var()) || d.tautology_except(l.var())) return true;
    next_epoch(lit_stamp_, lit_epoch_);
    for (Lit k : c.literals())
      if (k != l) lit_stamp_[(~k).index()] = lit_epoch_;
    for (Lit m : d.literals())
      if (m != ~l && lit_stamp_[m.index()] == lit_epoch_) return true;
    return false;
  }

  bool stuck_at(ClauseId eid) {
    const Clause& e = f_.clause(eid);
    if (e.is_tautology()) return false;
    const Lit b = blocking_[eid];
    for (ClauseId d : stuck_occ_[(~b).index()])
      if (!taut_resolvent(e, b, f_.clause(d))) return true;
    return false;
  }

  // Queues members blocked on `b` labelled above `after`, dropping stale
  // index entries on the way.
  void queue_blocked_on(Lit b, std::uint64_t after, Heap& heap) {
    auto& list = by_blocking_[b.index()];
    std::size_t keep = 0;
    for (const Entry& entry : list) {
      const auto [label, id] = entry;
      if (label_[id] != label || blocking_[id] != b) continue;
      list[keep++] = entry;
      if (label <= after || seen_[id] == epoch_) continue;
      seen_[id] = epoch_;
      heap.push(entry);
    }
    list.resize(keep);
  }

  void add_stuck(const Clause& c) {
    stuck_mark_[c.id()] = epoch_;
    for (Lit l : c.literals()) {
      auto& list = stuck_occ_[l.index()];
      if (list.empty()) touched_lits_.push_back(l.index());
      list.push_back(c.id());
    }
  }

  // Worklist BCE over `stuck` where a clause must be blocked w.r.t. the stuck
  // clauses not yet eliminated plus the members labelled at least `from`.
  // Appends the eliminations to `order`; true if every stuck clause went.
  bool flush(const std::vector<ClauseId>& stuck, std::uint64_t from,
             std::vector<BlockingTrace::Entry>& order) {
    next_epoch(remaining_, flush_epoch_);
    std::vector<ClauseId> queue(stuck.begin(), stuck.end());
    for (ClauseId id : stuck) {
      remaining_[id] = flush_epoch_;
      queued_[id] = flush_epoch_;
    }
    auto in_context = [&](ClauseId d) {
      if (remaining_[d] == flush_epoch_) return true;
      return member(d) && label_[d] >= from && stuck_mark_[d] != epoch_;
    };
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const ClauseId sid = queue[head];
      queued_[sid] = 0;
      const Clause& s = f_.clause(sid);
      for (Lit l : s.literals()) {
        bool blocked = true;
        if (!s.is_tautology()) {
          for (ClauseId d : f_.occurrences(~l)) {
            ++work_;
            if (d == sid || !in_context(d)) continue;
            if (!taut_resolvent(s, l, f_.clause(d))) {
              blocked = false;
              break;
            }
          }
        }
        if (!blocked) continue;
        remaining_[sid] = 0;
        order.push_back({sid, l});
        for (Lit x : s.literals()) {
          for (ClauseId t : stuck_occ_[(~x).index()]) {
            if (remaining_[t] != flush_epoch_ || queued_[t] == flush_epoch_)
              continue;
            queued_[t] = flush_epoch_;
            queue.push_back(t);
          }
        }
        break;
      }
    }
    return order.size() == stuck.size();
  }

  void unlink(ClauseId id) {
    (prev_[id] == kNil ? head_ : next_[prev_[id]]) = next_[id];
    (next_[id] == kNil ? tail_ : prev_[next_[id]]) = prev_[id];
    prev_[id] = next_[id] = kNil;
    label_[id] = 0;
  }

  // Inserts `order` (in sequence) before member `before`, or at the end.
  void place(const std::vector<BlockingTrace::Entry>& order, ClauseId before) {
    if (order.empty()) return;
    for (const auto& e : order)
      if (member(e.clause)) unlink(e.clause);

    std::uint64_t lo = 0, hi = 0;
    auto bounds = [&] {
      const ClauseId after = before == kNil ? tail_ : prev_[before];
      lo = after == kNil ? 0 : label_[after];
      hi = before == kNil ? lo + kGap * (order.size() + 1) : label_[before];
    };
    bounds();
    if (hi - lo <= order.size()) {
      relabel();
      bounds();
    }
    const std::uint64_t step = (hi - lo) / (order.size() + 1);
    std::uint64_t label = lo;
    for (const auto& e : order) {
      label += step;
      const ClauseId id = e.clause;
      prev_[id] = before == kNil ? tail_ : prev_[before];
      next_[id] = before;
      (prev_[id] == kNil ? head_ : next_[prev_[id]]) = id;
      (before == kNil ? tail_ : prev_[before]) = id;
      label_[id] = label;
      blocking_[id] = e.literal;
      by_blocking_[e.literal.index()].emplace_back(label, id);
    }
  }

  void relabel() {
    for (auto& list : by_blocking_) list.clear();
    std::uint64_t label = 0;
    for (ClauseId id = head_; id != kNil; id = next_[id]) {
      label += kGap;
      label_[id] = label;
      by_blocking_[blocking_[id].index()].emplace_back(label, id);
    }
  }

  const Formula& f_;
  std::vector<std::uint64_t> label_;  // 0 for non-members
  std::vector<Lit> blocking_;
  std::vector<ClauseId> prev_, next_;
  ClauseId head_ = kNil, tail_ = kNil;
  std::vector<std::vector<Entry>> by_blocking_;

  // Per-try scratch.
  std::vector<std::uint32_t> seen_;
  std::vector<std::uint32_t> stuck_mark_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> remaining_, queued_;
  std::uint32_t flush_epoch_ = 0;
  std::vector<std::uint32_t> lit_stamp_;
  std::uint32_t lit_epoch_ = 0;
  std::vector<std::vector<ClauseId>> stuck_occ_;
  std::vector<std::size_t> touched_lits_;
  std::uint64_t work_ = 0;  // heap pops, occurrence visits, resolvent checks
};

StageSnapshot snapshot(std::string label, std::size_t left, std::size_t right,
                       double elapsed_ms) {
  return {std::move(label), left, right, {left, left + right}, elapsed_ms};
}

}  // namespace

Decomposition rset_guided_decompose(Formula f,
                                    std::span<const ClauseId> right_ids,
                                    const Config& cfg, const Deadline* deadline,
                                    StallPolicy stall) {
  Stopwatch watch;
  Decomposition d;
  d.algorithm = "rset_guided";
  d.left_trace.emplace();

  std::vector<ClauseId> guide(right_ids.begin(), right_ids.end());
  std::sort(guide.begin(), guide.end());
  guide.erase(std::unique(guide.begin(), guide.end()), guide.end());

  BceEngine engine(f.num_vars());
  const BceContext later = cfg.bce_context(false, deadline);
  TouchList work = TouchList::all_alive(f, cfg.touch_cap);
  d.left_trace->append(
      engine.run(work, f, d.left, cfg.bce_context(true, deadline)));

  std::size_t cursor = 0;
  while (!f.empty()) {
    if (deadline) deadline->poll();
    while (cursor < guide.size() &&
           (!f.contains_id(guide[cursor]) || !f.alive(guide[cursor])))
      ++cursor;
    if (cursor == guide.size()) {
      // Limited BCE may have left blocked clauses behind.
      FullBceResult rescue = full_bce(f, deadline);
      d.left.insert(d.left.end(), rescue.eliminated.begin(),
                    rescue.eliminated.end());
      d.left_trace->append(rescue.trace);
      if (f.empty()) break;
      if (stall == StallPolicy::kThrow)
        throw PostconditionViolation(
            "rset_guided_decompose: guide exhausted with unsolvable clauses left");
      for (ClauseId id : f.alive_ids()) {
        f.kill(id);
        d.right.push_back(id);
      }
      break;
    }
    const ClauseId pick = guide[cursor++];
    f.kill(pick);
    d.right.push_back(pick);
    enqueue_touch(f.clause(pick), f, later, work);
    d.left_trace->append(engine.run(work, f, d.left, later));
  }
  d.touch_drops = work.drops();
  d.sort_sides();
  d.phase_times.emplace_back("total", watch.seconds());
  return d;
}

MoveResult move_blocked_clause(std::span<const ClauseId> l_ids,
                               std::span<const ClauseId> r_ids,
                               const Formula& f, const Deadline* deadline,
                               std::uint64_t try_budget) {
  check_sides(l_ids, r_ids, f);
  SolvableSet set(f, l_ids);
  std::vector<ClauseId> order(r_ids.begin(), r_ids.end());
  std::sort(order.begin(), order.end());

  MoveResult out;
  for (ClauseId id : order) {
    if (deadline) deadline->poll();
    switch (set.try_add(id, try_budget)) {
      case SolvableSet::Outcome::kAdded:
        ++out.moved;
        continue;
      case SolvableSet::Outcome::kOverBudget:
        ++out.budget_hits;
        break;
      case SolvableSet::Outcome::kRejected:
        break;
    }
    out.right.push_back(id);
  }
  out.left = set.members();
  out.left_trace = set.trace();
  return out;
}

MoveResult move_blockable_clause(std::span<const ClauseId> l_ids,
                                 std::span<const ClauseId> r_ids,
                                 const Formula& f, const BlockingTrace& trace) {
  const std::vector<char> side = check_sides(l_ids, r_ids, f);
  std::vector<char> traced(f.num_clauses(), 0);
  std::vector<char> blocking(2 * static_cast<std::size_t>(f.num_vars()), 0);
  MoveResult out;
  for (const auto& e : trace.entries) {
    if (!f.contains_id(e.clause) || side[e.clause] != 1) continue;
    traced[e.clause] = 1;
    blocking[e.literal.index()] = 1;
    out.left_trace.entries.push_back(e);
  }
  for (ClauseId id : l_ids)
    if (!traced[id])
      throw InputError("move_blockable_clause: L clause without trace entry");

  out.left.assign(l_ids.begin(), l_ids.end());
  std::vector<ClauseId> order(r_ids.begin(), r_ids.end());
  std::sort(order.begin(), order.end());
  for (ClauseId id : order) {
    const Clause& c = f.clause(id);
    const bool blockable =
        !c.empty() && std::none_of(c.literals().begin(), c.literals().end(),
                                   [&](Lit l) { return blocking[l.index()]; });
    if (blockable) {
      out.left.push_back(id);
      ++out.moved;
    } else {
      out.right.push_back(id);
    }
  }
  std::sort(out.left.begin(), out.left.end());
  return out;
}

const StageSnapshot* PipelineReport::stage(std::string_view label) const {
  for (const auto& s : stages)
    if (s.label == label) return &s;
  return nullptr;
}

namespace {

// rset_guided followed by the move stages, appending snapshots labelled
// `prefix` + stage name. Throws PostconditionViolation if L shrinks.
Decomposition post_process(const Formula& f, const Decomposition& start,
                           const Config& cfg, const Deadline* deadline,
                           const std::string& prefix, PipelineReport& rep) {
  Stopwatch w;
  Decomposition cur = rset_guided_decompose(f, start.right, cfg, deadline);
  rep.touch_drops += cur.touch_drops;
  rep.stages.push_back(snapshot(prefix + "rset_guided", cur.left.size(),
                                cur.right.size(), w.millis()));
  if (cur.left.size() < start.left.size())
    throw PostconditionViolation("mix_decompose: rset_guided shrank L");

  const bool run_move =
      cfg.skip_final_move == FinalMoveSkip::kOff ||
      (cfg.skip_final_move == FinalMoveSkip::kAuto &&
       f.num_alive() <= cfg.final_move_max_clauses);
  if (run_move) {
    Stopwatch mw;
    const std::size_t before = cur.left.size();
    MoveResult moved = move_blocked_clause(cur.left, cur.right, f, deadline,
                                           cfg.move_try_budget);
    rep.move_budget_hits += moved.budget_hits;
    cur.left = std::move(moved.left);
    cur.right = std::move(moved.right);
    cur.left_trace = std::move(moved.left_trace);
    rep.move_blocked_ran = true;
    rep.stages.push_back(snapshot(prefix + "move_blocked", cur.left.size(),
                                  cur.right.size(), mw.millis()));
    if (cur.left.size() < before)
      throw PostconditionViolation("mix_decompose: move_blocked shrank L");
  }
  return cur;
}

}  // namespace

PipelineReport mix_decompose(const Formula& f, const Config& cfg,
                             const Deadline* deadline) {
  PipelineReport rep;
  Stopwatch total;

  std::vector<Decomposition> components;
  auto run_component = [&](auto&& fn) {
    Stopwatch w;
    Decomposition d = fn();
    rep.stages.push_back(
        snapshot(d.algorithm, d.left.size(), d.right.size(), w.millis()));
    rep.touch_drops += d.touch_drops;
    components.push_back(std::move(d));
  };
  run_component([&] { return pure_decompose(f, deadline); });
  run_component([&] { return min_pure_decompose(f, cfg, deadline); });
  run_component([&] { return max_pure_decompose(f, cfg, deadline); });

  auto largest = [&] {
    std::size_t best = 0;
    for (std::size_t i = 1; i < components.size(); ++i)
      if (components[i].left.size() > components[best].left.size()) best = i;
    return best;
  };
  // The pure family splits symmetrically; LessInterfere's R need not be
  // solvable.
  const std::size_t best_pure = largest();
  if (f.num_alive() < cfg.less_interfere_max_clauses &&
      f.num_vars() < cfg.less_interfere_max_vars) {
    run_component([&] { return less_interfere_decompose(f, cfg, deadline); });
    rep.less_interfere_ran = true;
  }
  const std::size_t best = largest();
  const Decomposition& chosen = components[best];
  rep.best_component = chosen.algorithm;
  rep.stages.push_back(
      snapshot("best", chosen.left.size(), chosen.right.size(), 0));

  Decomposition cur = post_process(f, chosen, cfg, deadline, "", rep);
  bool left_ok = verify_solvable(f, cur.left);
  bool right_ok = verify_solvable(f, cur.right);

  // An asymmetric result can only come from LessInterfere's R. Redo the
  // post-processing from the best symmetric component and keep it if it is
  // at least as large as every component.
  if (!cfg.blockable && !(left_ok && right_ok) && best != best_pure) {
    Decomposition alt =
        post_process(f, components[best_pure], cfg, deadline, "repair_", rep);
    if (alt.left.size() >= chosen.left.size() &&
        verify_solvable(f, alt.left) && verify_solvable(f, alt.right)) {
      cur = std::move(alt);
      left_ok = right_ok = true;
      rep.repaired = true;
    }
  }

  if (cfg.blockable) {
    Stopwatch bw;
    MoveResult moved =
        move_blockable_clause(cur.left, cur.right, f, *cur.left_trace);
    cur.left = std::move(moved.left);
    cur.right = std::move(moved.right);
    cur.left_trace = std::move(moved.left_trace);
    rep.blockable_moved = moved.moved;
    rep.stages.push_back(snapshot("move_blockable", cur.left.size(),
                                  cur.right.size(), bw.millis()));
    left_ok = verify_solvable(f, cur.left);
    right_ok = verify_solvable(f, cur.right);
  }

  rep.symmetric = left_ok && right_ok;
  cur.algorithm = "mix";
  cur.touch_drops = rep.touch_drops;
  cur.phase_times.clear();
  for (const auto& s : rep.stages)
    if (s.label != "best")
      cur.phase_times.emplace_back(s.label, s.elapsed_ms / 1000.0);
  cur.phase_times.emplace_back("total", total.seconds());
  cur.normalize();
  rep.final = std::move(cur);
  return rep;
}

}  // namespace bcd
