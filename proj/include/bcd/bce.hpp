#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <vector>

#include "bcd/deadline.hpp"
#include "bcd/formula.hpp"

namespace bcd {

// Thresholds of the limited BCE. Defaults are the published constants.
struct BceContext {
  // First invocation: every literal is tried and touch is unrestricted.
  bool is_first = true;
  // Literals l with live_count(~l) < limit_occ are always tried.
  std::uint32_t limit_occ = 2;
  // Below this many live clauses every literal is tried.
  std::size_t limit_size = 300000;
  // Below this many live clauses touch collects every complement occurrence.
  std::size_t touch_full_threshold = 800000;
  const Deadline* deadline = nullptr;
};

// FIFO worklist of clause ids with O(1) membership. A clause is never pending
// twice. With a cap, push() drops entries once the queue holds `cap` ids;
// seed() ignores the cap.
class TouchList {
 public:
  explicit TouchList(std::size_t num_clauses,
                     std::optional<std::size_t> cap = std::nullopt)
      : pending_(num_clauses, 0), cap_(cap) {}

  static TouchList all_alive(const Formula& f,
                             std::optional<std::size_t> cap = std::nullopt);

  void seed(ClauseId id);
  bool push(ClauseId id);
  std::optional<ClauseId> pop();

  bool empty() const { return queue_.empty(); }
  std::size_t size() const { return queue_.size(); }
  bool pending(ClauseId id) const { return pending_[id] != 0; }
  std::size_t drops() const { return drops_; }

 private:
  std::deque<ClauseId> queue_;
  std::vector<char> pending_;
  std::optional<std::size_t> cap_;
  std::size_t drops_ = 0;
};

struct BlockingTrace {
  struct Entry {
    ClauseId clause;
    Lit literal;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  // Elimination order.
  std::vector<Entry> entries;

  void append(const BlockingTrace& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }
  std::size_t size() const { return entries.size(); }
};

// Whether the resolvent of c and d on l (l in c, ~l in d) contains a
// complementary pair. Throws InternalError if the precondition fails.
bool resolvent_tautology(const Clause& c, const Clause& d, Lit l);

// Definition-level blockedness of `c` on `l` with respect to the alive
// clauses of `f`.
bool is_blocked(const Clause& c, Lit l, const Formula& f);

// Alive clauses whose blockedness may change once `c` is gone from `f`.
// Sorted, duplicate-free.
std::vector<ClauseId> touch(const Clause& c, const Formula& f,
                            const BceContext& ctx);

// Queues touch(c, f, ctx) into `t` without materializing the set.
void enqueue_touch(const Clause& c, const Formula& f, const BceContext& ctx,
                   TouchList& t);

// Reusable limited-BCE runner. Keeps a literal-stamp table sized to the
// formula so repeated small runs stay cheap.
class BceEngine {
 public:
  explicit BceEngine(Var num_vars)
      : stamp_(2 * static_cast<std::size_t>(num_vars), 0) {}

  BlockingTrace run(TouchList& worklist, Formula& f,
                    std::vector<ClauseId>& eliminated, const BceContext& ctx);

  // Same answer as is_blocked(), without materializing resolvents.
  bool blocked(const Clause& c, Lit l, const Formula& f);

 private:
  void next_epoch();

  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

// Limited BCE over a worklist. Blocked clauses are killed in `f`, appended to
// `eliminated`, and their touch sets are queued. Returns the blocking literal
// of each elimination, in order.
BlockingTrace bce(TouchList& worklist, Formula& f,
                  std::vector<ClauseId>& eliminated, const BceContext& ctx);

struct FixpointResult {
  std::vector<ClauseId> surviving;   // sorted
  std::vector<ClauseId> eliminated;  // sorted
  BlockingTrace trace;
};

// Unrestricted BCE by repeated full scans. `scan_order`, when non-empty, is
// the order in which alive clauses are visited in each pass.
FixpointResult oracle_bce_fixpoint(const Formula& f,
                                   std::span<const ClauseId> scan_order = {});

// Runs unrestricted worklist BCE on all alive clauses of `f`.
struct FullBceResult {
  std::vector<ClauseId> eliminated;
  BlockingTrace trace;
};
FullBceResult full_bce(Formula& f, const Deadline* deadline = nullptr);

// True iff BCE removes every clause of the sub-formula induced by `ids`.
bool verify_solvable(const Formula& f, std::span<const ClauseId> ids);

}  // namespace bcd
