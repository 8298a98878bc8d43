#include "bcd/unit.hpp"

#include "bcd/errors.hpp"

namespace bcd {
namespace {

class Propagator {
 public:
  explicit Propagator(const Formula& f)
      : f_(f),
        value_(static_cast<std::size_t>(f.num_vars()) + 1, 0),
        free_(f.num_clauses(), 0),
        satisfied_(f.num_clauses(), false) {
    for (ClauseId id = 0; id < f.num_clauses(); ++id)
      free_[id] = static_cast<std::uint32_t>(f.clause(id).size());
  }

  // Value of a literal: 1 true, -1 false, 0 unassigned.
  int value(Lit l) const {
    const int v = value_[l.var()];
    return l.is_negative() ? -v : v;
  }

  std::vector<Lit> run() {
    for (ClauseId id = 0; id < f_.num_clauses(); ++id) {
      const Clause& c = f_.clause(id);
      if (c.alive() && c.size() == 1) assign(c.literals()[0]);
    }
    for (std::size_t head = 0; head < trail_.size(); ++head) {
      const Lit l = trail_[head];
      f_.for_each_alive(l, [&](ClauseId id) { satisfied_[id] = true; });
      f_.for_each_alive(~l, [&](ClauseId id) {
        if (satisfied_[id]) return;
        if (--free_[id] == 0) throw ConflictDetected(l);
        if (free_[id] == 1) {
          for (Lit k : f_.clause(id).literals()) {
            const int v = value(k);
            if (v > 0) return;
            if (v == 0) {
              assign(k);
              return;
            }
          }
        }
      });
    }
    return trail_;
  }

 private:
  void assign(Lit l) {
    const int v = value(l);
    if (v > 0) return;
    if (v < 0) throw ConflictDetected(l);
    value_[l.var()] = l.is_negative() ? -1 : 1;
    trail_.push_back(l);
  }

  const Formula& f_;
  std::vector<int> value_;
  std::vector<std::uint32_t> free_;
  std::vector<bool> satisfied_;
  std::vector<Lit> trail_;
};

}  // namespace

UnitSimplified unit_simplify(const Formula& f) {
  Propagator prop(f);
  UnitSimplified out;
  out.trail = prop.run();
  out.formula.reserve_vars(f.num_vars());
  for (Lit l : out.trail) out.formula.add_clause(std::span<const Lit>(&l, 1));

  std::vector<Lit> kept;
  for (ClauseId id = 0; id < f.num_clauses(); ++id) {
    const Clause& c = f.clause(id);
    if (!c.alive()) continue;
    kept.clear();
    bool sat = false;
    for (Lit l : c.literals()) {
      const int v = prop.value(l);
      if (v > 0) {
        sat = true;
        break;
      }
      if (v == 0) kept.push_back(l);
    }
    if (!sat) out.formula.add_clause(kept);
  }
  return out;
}

}  // namespace bcd
