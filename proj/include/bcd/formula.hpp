#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bcd/literal.hpp"

namespace bcd {

class Formula;

// A clause with a stable id. Literals are duplicate-free; complementary pairs
// are kept (tautologies are legal input).
class Clause {
 public:
  ClauseId id() const { return id_; }
  std::span<const Lit> literals() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool alive() const { return alive_; }
  std::uint64_t score() const { return score_; }

  bool contains(Lit l) const;

  bool is_tautology() const { return taut_var_ != 0; }
  // True when the clause contains a complementary pair on some variable
  // other than `v`. Resolving on v keeps such a pair in the resolvent.
  bool tautology_except(Var v) const {
    return multi_taut_ || (taut_var_ != 0 && taut_var_ != v);
  }

 private:
  friend class Formula;

  ClauseId id_ = 0;
  std::vector<Lit> lits_;
  bool alive_ = true;
  std::uint64_t score_ = 0;
  Var taut_var_ = 0;
  bool multi_taut_ = false;
};

bool tautology(std::span<const Lit> lits);
inline bool tautology(const Clause& c) { return c.is_tautology(); }

// Clause arena plus per-literal occurrence lists.
//
// Deleted clauses stay in the arena (ids are never reused) and are removed
// from occurrence lists lazily: a list is compacted once more than half of
// its entries are dead. Killing a clause may therefore invalidate spans
// previously returned by occurrences(); callers collect ids before killing.
class Formula {
 public:
  Formula() = default;
  explicit Formula(Var num_vars) { reserve_vars(num_vars); }

  // Appends a clause. Duplicate literals are dropped, first occurrence wins.
  ClauseId add_clause(std::span<const Lit> lits);
  ClauseId add_clause(std::initializer_list<int> lits);

  // Extends the variable range without adding clauses.
  void reserve_vars(Var num_vars);

  Var num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  std::size_t num_alive() const { return num_alive_; }
  bool empty() const { return num_alive_ == 0; }

  const Clause& clause(ClauseId id) const { return clauses_[id]; }
  bool alive(ClauseId id) const { return clauses_[id].alive_; }
  bool contains_id(ClauseId id) const { return id < clauses_.size(); }

  // Raw occurrence list of `l`; may contain dead clauses.
  std::span<const ClauseId> occurrences(Lit l) const {
    if (l.var() > num_vars_) return {};
    return occ_[l.index()];
  }
  std::uint32_t live_count(Lit l) const {
    return l.var() > num_vars_ ? 0 : live_count_[l.index()];
  }

  template <typename Fn>
  void for_each_alive(Lit l, Fn&& fn) const {
    for (ClauseId id : occurrences(l))
      if (clauses_[id].alive_) fn(id);
  }

  std::vector<ClauseId> alive_occurrences(Lit l) const;

  void kill(ClauseId id);

  std::vector<ClauseId> alive_ids() const;

  // Same arena and ids, with exactly `ids` alive.
  Formula restricted_to(std::span<const ClauseId> ids) const;

  bool has_empty_clause() const;

  void reset_scores();
  void add_score(ClauseId id, std::uint64_t delta) {
    clauses_[id].score_ += delta;
  }

 private:
  void compact(std::size_t lit_index);

  std::vector<Clause> clauses_;
  std::vector<std::vector<ClauseId>> occ_;
  std::vector<std::uint32_t> live_count_;
  std::vector<std::uint32_t> dead_in_occ_;
  Var num_vars_ = 0;
  std::size_t num_alive_ = 0;
};

}  // namespace bcd
