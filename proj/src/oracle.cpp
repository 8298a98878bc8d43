#include "bcd/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bcd/errors.hpp"

namespace bcd {
namespace {

using PlainClause = std::vector<int>;

bool has_pair(const std::set<int>& lits) {
  for (int x : lits)
    if (x > 0 && lits.count(-x)) return true;
  return false;
}

bool plain_blocked(const PlainClause& c, int l,
                   const std::vector<const PlainClause*>& rest) {
  if (std::find(c.begin(), c.end(), -l) != c.end()) return true;
  for (const PlainClause* d : rest) {
    if (d == &c) continue;
    if (std::find(d->begin(), d->end(), -l) == d->end()) continue;
    std::set<int> resolvent;
    for (int x : c)
      if (x != l) resolvent.insert(x);
    for (int x : *d)
      if (x != -l) resolvent.insert(x);
    if (!has_pair(resolvent)) return false;
  }
  return true;
}

// Removes blocked clauses until none is left to remove.
bool plain_solvable(std::vector<const PlainClause*> set) {
  bool changed = true;
  while (changed && !set.empty()) {
    changed = false;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const PlainClause& c = *set[i];
      const bool blocked = std::any_of(c.begin(), c.end(), [&](int l) {
        return plain_blocked(c, l, set);
      });
      if (blocked) {
        set.erase(set.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  return set.empty();
}

PlainClause plain(const Clause& c) {
  PlainClause out;
  for (Lit l : c.literals()) out.push_back(l.value());
  return out;
}

}  // namespace

MaxBsResult oracle_max_blocked_subset(const Formula& f) {
  const std::vector<ClauseId> ids = f.alive_ids();
  if (ids.size() > 18) throw TooLarge("oracle_max_blocked_subset: > 18 clauses");
  std::vector<PlainClause> clauses;
  for (ClauseId id : ids) clauses.push_back(plain(f.clause(id)));

  MaxBsResult out;
  const std::size_t m = ids.size();
  for (std::size_t k = m + 1; k-- > 0;) {
    // Walk all k-subsets as selection masks in lexicographic order.
    std::vector<char> pick(m, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
      ++out.explored;
      std::vector<const PlainClause*> set;
      for (std::size_t i = 0; i < m; ++i)
        if (pick[i]) set.push_back(&clauses[i]);
      if (plain_solvable(set)) {
        for (std::size_t i = 0; i < m; ++i)
          if (pick[i]) out.best_ids.push_back(ids[i]);
        out.best_size = k;
        return out;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

std::vector<OracleScore> oracle_score(const Formula& f) {
  const std::vector<ClauseId> ids = f.alive_ids();
  if (ids.size() > 500) throw TooLarge("oracle_score: > 500 clauses");

  std::map<int, std::uint64_t> occ;
  for (ClauseId id : ids)
    for (Lit l : f.clause(id).literals()) ++occ[l.value()];
  std::uint64_t m = 0;
  for (const auto& [lit, n] : occ)
    if (m == 0 || n < m) m = n;

  std::vector<OracleScore> out(f.num_clauses());
  for (ClauseId a : ids) {
    const PlainClause c = plain(f.clause(a));
    OracleScore& s = out[a];
    for (ClauseId b : ids) {
      const PlainClause d = plain(f.clause(b));
      for (int l : c) {
        if (std::find(d.begin(), d.end(), -l) == d.end()) continue;
        ++s.approx;
        if (occ[l] == m) ++s.restricted;
        if (a == b) continue;
        std::set<int> resolvent;
        for (int x : c)
          if (x != l) resolvent.insert(x);
        for (int x : d)
          if (x != -l) resolvent.insert(x);
        if (!has_pair(resolvent)) ++s.exact;
      }
    }
  }
  return out;
}

bool oracle_satisfiable(const Formula& f) {
  if (f.num_vars() > 20) throw TooLarge("oracle_satisfiable: > 20 variables");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (ClauseId id : f.alive_ids()) {
    std::uint32_t pos = 0, neg = 0;
    for (Lit l : f.clause(id).literals())
      (l.is_negative() ? neg : pos) |= 1u << (l.var() - 1);
    masks.emplace_back(pos, neg);
  }
  const std::uint32_t limit = 1u << f.num_vars();
  for (std::uint32_t a = 0; a < limit; ++a) {
    const bool all = std::all_of(masks.begin(), masks.end(), [&](auto pn) {
      return ((pn.first & a) | (pn.second & ~a)) != 0;
    });
    if (all) return true;
  }
  return false;
}

}  // namespace bcd
