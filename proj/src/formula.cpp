#include "bcd/formula.hpp"

#include <algorithm>

#include "bcd/errors.hpp"

namespace bcd {

bool Clause::contains(Lit l) const {
  return std::find(lits_.begin(), lits_.end(), l) != lits_.end();
}

bool tautology(std::span<const Lit> lits) {
  for (std::size_t i = 0; i < lits.size(); ++i)
    for (std::size_t j = i + 1; j < lits.size(); ++j)
      if (lits[i] == ~lits[j]) return true;
  return false;
}

void Formula::reserve_vars(Var num_vars) {
  if (num_vars <= num_vars_) return;
  num_vars_ = num_vars;
  const std::size_t n = 2 * static_cast<std::size_t>(num_vars);
  occ_.resize(n);
  live_count_.resize(n, 0);
  dead_in_occ_.resize(n, 0);
}

ClauseId Formula::add_clause(std::initializer_list<int> lits) {
  std::vector<Lit> v;
  v.reserve(lits.size());
  for (int x : lits) v.emplace_back(x);
  return add_clause(v);
}

ClauseId Formula::add_clause(std::span<const Lit> lits) {
  Clause c;
  c.id_ = static_cast<ClauseId>(clauses_.size());
  c.lits_.reserve(lits.size());
  Var max_var = 0;
  for (Lit l : lits) {
    if (std::find(c.lits_.begin(), c.lits_.end(), l) != c.lits_.end())
      continue;
    c.lits_.push_back(l);
    max_var = std::max(max_var, l.var());
  }
  // Tautology bookkeeping: remember the single complementary variable, or
  // that there is more than one.
  for (std::size_t i = 0; i < c.lits_.size(); ++i) {
    if (c.lits_[i].is_negative()) continue;
    if (std::find(c.lits_.begin(), c.lits_.end(), ~c.lits_[i]) ==
        c.lits_.end())
      continue;
    if (c.taut_var_ == 0)
      c.taut_var_ = c.lits_[i].var();
    else
      c.multi_taut_ = true;
  }
  reserve_vars(max_var);
  for (Lit l : c.lits_) {
    occ_[l.index()].push_back(c.id_);
    ++live_count_[l.index()];
  }
  ++num_alive_;
  clauses_.push_back(std::move(c));
  return clauses_.back().id_;
}

std::vector<ClauseId> Formula::alive_occurrences(Lit l) const {
  std::vector<ClauseId> out;
  out.reserve(live_count(l));
  for_each_alive(l, [&](ClauseId id) { out.push_back(id); });
  return out;
}

void Formula::kill(ClauseId id) {
  if (id >= clauses_.size()) throw InternalError("kill: unknown clause id");
  Clause& c = clauses_[id];
  if (!c.alive_) return;
  c.alive_ = false;
  --num_alive_;
  for (Lit l : c.lits_) {
    const std::size_t i = l.index();
    --live_count_[i];
    if (2 * ++dead_in_occ_[i] > occ_[i].size()) compact(i);
  }
}

void Formula::compact(std::size_t lit_index) {
  auto& list = occ_[lit_index];
  std::erase_if(list, [&](ClauseId id) { return !clauses_[id].alive_; });
  dead_in_occ_[lit_index] = 0;
}

std::vector<ClauseId> Formula::alive_ids() const {
  std::vector<ClauseId> ids;
  ids.reserve(num_alive_);
  for (const Clause& c : clauses_)
    if (c.alive_) ids.push_back(c.id_);
  return ids;
}

Formula Formula::restricted_to(std::span<const ClauseId> ids) const {
  Formula sub;
  sub.reserve_vars(num_vars_);
  sub.clauses_ = clauses_;
  for (Clause& c : sub.clauses_) {
    c.alive_ = false;
    c.score_ = 0;
  }
  for (ClauseId id : ids) {
    if (id >= clauses_.size())
      throw InternalError("restricted_to: unknown clause id");
    Clause& c = sub.clauses_[id];
    if (c.alive_) continue;
    c.alive_ = true;
    ++sub.num_alive_;
    for (Lit l : c.lits_) {
      sub.occ_[l.index()].push_back(id);
      ++sub.live_count_[l.index()];
    }
  }
  return sub;
}

bool Formula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.alive_ && c.empty(); });
}

void Formula::reset_scores() {
  for (Clause& c : clauses_) c.score_ = 0;
}

}  // namespace bcd
