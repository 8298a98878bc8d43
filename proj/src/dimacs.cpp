#include "bcd/dimacs.hpp"

#include <charconv>
#include <climits>

#include "bcd/errors.hpp"

namespace bcd {
namespace {

bool is_space(char ch) {
  return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\f' || ch == '\v';
}

// Splits a line into whitespace-separated tokens without allocating.
class Tokens {
 public:
  explicit Tokens(std::string_view line) : rest_(line) {}

  bool next(std::string_view& tok) {
    std::size_t i = 0;
    while (i < rest_.size() && is_space(rest_[i])) ++i;
    if (i == rest_.size()) return false;
    std::size_t j = i;
    while (j < rest_.size() && !is_space(rest_[j])) ++j;
    tok = rest_.substr(i, j - i);
    rest_ = rest_.substr(j);
    return true;
  }

 private:
  std::string_view rest_;
};

long long to_integer(std::string_view tok, std::size_t line) {
  long long value = 0;
  const char* first = tok.data();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || first == ptr)
    throw ParseError(line, "expected an integer, got '" + std::string(tok) + "'");
  return value;
}

}  // namespace

Formula parse_dimacs(std::string_view text, DimacsInfo* info) {
  DimacsInfo local;
  DimacsInfo& out = info ? *info : local;
  out = DimacsInfo{};

  Formula f;
  bool have_header = false;
  std::vector<Lit> pending;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size()) continue;
    const char lead = line[first];
    if (lead == 'c') continue;
    if (lead == '%') break;  // SATLIB end marker

    Tokens tokens(line.substr(first));
    std::string_view tok;
    if (lead == 'p') {
      if (have_header) throw ParseError(line_no, "duplicate header");
      std::string_view p, cnf, vars, clauses, extra;
      if (!tokens.next(p) || p != "p" || !tokens.next(cnf) || cnf != "cnf" ||
          !tokens.next(vars) || !tokens.next(clauses) || tokens.next(extra))
        throw ParseError(line_no, "malformed header, expected 'p cnf <vars> <clauses>'");
      const long long nv = to_integer(vars, line_no);
      const long long nc = to_integer(clauses, line_no);
      if (nv < 0 || nc < 0 || nv > INT_MAX)
        throw ParseError(line_no, "header counts out of range");
      out.header_vars = static_cast<Var>(nv);
      out.header_clauses = static_cast<std::size_t>(nc);
      f.reserve_vars(out.header_vars);
      have_header = true;
      continue;
    }

    if (!have_header) throw ParseError(line_no, "clause data before 'p cnf' header");
    while (tokens.next(tok)) {
      const long long v = to_integer(tok, line_no);
      if (v < -INT_MAX || v > INT_MAX)
        throw ParseError(line_no, "literal out of range");
      if (v == 0) {
        if (pending.empty()) out.has_empty_clause = true;
        f.add_clause(pending);
        pending.clear();
      } else {
        pending.emplace_back(static_cast<int>(v));
      }
    }
  }

  if (!have_header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!pending.empty()) {
    out.warnings.push_back("last clause not terminated by 0");
    f.add_clause(pending);
  }
  if (f.num_clauses() != out.header_clauses) {
    out.warnings.push_back("header declares " +
                           std::to_string(out.header_clauses) +
                           " clauses, found " +
                           std::to_string(f.num_clauses()));
  }
  return f;
}

std::string serialize_dimacs(const Formula& f, std::span<const ClauseId> ids) {
  Var max_var = 0;
  for (ClauseId id : ids) {
    if (!f.contains_id(id))
      throw InternalError("serialize_dimacs: unknown clause id " +
                          std::to_string(id));
    for (Lit l : f.clause(id).literals()) max_var = std::max(max_var, l.var());
  }
  std::string out = "p cnf " + std::to_string(max_var) + " " +
                    std::to_string(ids.size()) + "\n";
  char buf[16];
  for (ClauseId id : ids) {
    for (Lit l : f.clause(id).literals()) {
      auto [end, ec] = std::to_chars(buf, buf + sizeof buf, l.value());
      out.append(buf, end);
      out.push_back(' ');
    }
    out.append("0\n");
  }
  return out;
}

}  // namespace bcd
