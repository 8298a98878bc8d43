// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <sys/resource.h>
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "bcd/decompose.hpp"
#include "bcd/dimacs.hpp"
#include "bcd/oracle.hpp"
#include "bcd/postprocess.hpp"
#include "json.hpp"
#include "support/random_cnf.hpp"

namespace {

using namespace bcd;
using testing::random_cnf;
using testing::Rng;
using testing::Shape;
namespace fs = std::filesystem;

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  // Records the first failure only.
  void fail(const std::string& why) {
    if (ok_) first_ = why;
    ok_ = false;
  }
  bool ok() const { return ok_; }
  const std::string& first() const { return first_; }

 private:
  bool ok_ = true;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t)
      .count();
}

std::string fmt(double v, int digits = 1) {
  std::ostringstream s;
  s << std::fixed;
  s.precision(digits);
  s << v;
  return s.str();
}

std::vector<Decomposition> components(const Formula& f, const Config& cfg) {
  return {pure_decompose(f), min_pure_decompose(f, cfg),
          max_pure_decompose(f, cfg), less_interfere_decompose(f, cfg)};
}

Verdict symmetric_decomposition() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1001);
  Check c;
  const Config cfg;
  for (int trial = 0; trial < 500 && c.ok(); ++trial) {
    const Formula f = random_cnf(rng);
    std::vector<Decomposition> ds = {pure_decompose(f),
                                     min_pure_decompose(f, cfg),
                                     max_pure_decompose(f, cfg),
                                     mix_decompose(f, cfg).final};
    for (const Decomposition& d : ds) {
      if (!is_partition(d, f)) c.fail(d.algorithm + " partition, trial " + std::to_string(trial));
      else if (!verify_solvable(f, d.left) || !verify_solvable(f, d.right))
        c.fail(d.algorithm + " asymmetric, trial " + std::to_string(trial));
    }
  }
  const double t = seconds_since(start);
  if (c.ok() && t >= 120) c.fail("suite took " + fmt(t) + " s");
  return {c.ok(), c.ok() ? "500 formulas x 4 algorithms, " + fmt(t) + " s"
                         : c.first()};
}

Verdict limited_bce() {
  Rng rng(1002);
  Check c;
  const Shape shape{.max_vars = 40, .max_clauses = 200};
  std::size_t runs = 0;
  for (int trial = 0; trial < 1000 && c.ok(); ++trial) {
    const Formula f = random_cnf(rng, shape);
    const FixpointResult ref = oracle_bce_fixpoint(f);

    std::vector<std::pair<BceContext, std::optional<std::size_t>>> ctxs;
    ctxs.push_back({BceContext{}, std::nullopt});
    for (int k = 0; k < 4; ++k) {
      BceContext ctx;
      ctx.is_first = false;
      ctx.limit_occ = static_cast<std::uint32_t>(testing::uniform(rng, 0, 3));
      ctx.limit_size = testing::uniform(rng, 0, 250);
      ctx.touch_full_threshold = testing::uniform(rng, 0, 250);
      std::optional<std::size_t> cap;
      if (rng() & 1) cap = testing::uniform(rng, 1, 20);
      ctxs.push_back({ctx, cap});
    }
    for (std::size_t i = 0; i < ctxs.size(); ++i) {
      Formula g = f.restricted_to(f.alive_ids());
      TouchList t = TouchList::all_alive(g, ctxs[i].second);
      std::vector<ClauseId> got;
      bce(t, g, got, ctxs[i].first);
      std::sort(got.begin(), got.end());
      ++runs;
      if (!std::includes(ref.eliminated.begin(), ref.eliminated.end(),
                         got.begin(), got.end()))
        c.fail("unsound elimination, trial " + std::to_string(trial));
      if (i == 0 && got != ref.eliminated)
        c.fail("first call incomplete, trial " + std::to_string(trial));
    }
  }
  return {c.ok(), c.ok() ? "1000 formulas, " + std::to_string(runs) +
                               " runs; first call equals the fixpoint"
                         : c.first()};
}

Verdict confluence() {
  Rng rng(1003);
  Check c;
  for (int trial = 0; trial < 200 && c.ok(); ++trial) {
    const Formula f = random_cnf(rng);
    const auto ref = oracle_bce_fixpoint(f).surviving;
    std::vector<ClauseId> order = f.alive_ids();
    for (int s = 0; s < 20; ++s) {
      std::shuffle(order.begin(), order.end(), rng);
      if (oracle_bce_fixpoint(f, order).surviving != ref) {
        c.fail("surviving set changed, trial " + std::to_string(trial));
        break;
      }
    }
  }
  return {c.ok(), c.ok() ? "200 formulas x 20 scan orders" : c.first()};
}

Verdict mix_dominance() {
  Rng rng(1004);
  Check c;
  const Config cfg;
  std::size_t strictly = 0;
  for (int trial = 0; trial < 500 && c.ok(); ++trial) {
    const Formula f = random_cnf(rng);
    Fraction best{0, 1};
    for (const Decomposition& d : components(f, cfg))
      if (best < d.fraction()) best = d.fraction();
    const Fraction mix = mix_decompose(f, cfg).final.fraction();
    if (mix < best) c.fail("mix below a component, trial " + std::to_string(trial));
    strictly += best < mix;
  }
  return {c.ok(), c.ok() ? "0 violations in 500; strictly better on " +
                               std::to_string(strictly)
                         : c.first()};
}

Verdict growth() {
  Rng rng(1005);
  Check c;
  const Config cfg;
  std::size_t steps = 0;
  for (int trial = 0; trial < 500 && c.ok(); ++trial) {
    const Formula f = random_cnf(rng);
    for (const Decomposition& d : components(f, cfg)) {
      const Decomposition r = rset_guided_decompose(f, d.right, cfg);
      const MoveResult m = move_blocked_clause(r.left, r.right, f, nullptr,
                                               cfg.move_try_budget);
      steps += 2;
      if (r.left.size() < d.left.size())
        c.fail("rset_guided shrank " + d.algorithm + ", trial " + std::to_string(trial));
      if (m.left.size() < r.left.size())
        c.fail("move_blocked shrank L, trial " + std::to_string(trial));
    }
    const PipelineReport rep = mix_decompose(f, cfg);
    for (const char* prefix : {"", "repair_"}) {
      const std::string p = prefix;
      const auto* rs = rep.stage(p + "rset_guided");
      const auto* mv = rep.stage(p + "move_blocked");
      if (!rs) continue;
      ++steps;
      if (mv && mv->fraction < rs->fraction)
        c.fail("pipeline move stage shrank L, trial " + std::to_string(trial));
    }
    if (rep.stage("rset_guided")->fraction < rep.stage("best")->fraction)
      c.fail("pipeline rset stage shrank L, trial " + std::to_string(trial));
  }
  return {c.ok(), c.ok() ? std::to_string(steps) + " post-processing steps, none shrank L"
                         : c.first()};
}

Verdict candidates() {
  Rng rng(1006);
  Check c;
  for (int trial = 0; trial < 1000 && c.ok(); ++trial) {
    const std::size_t n = testing::uniform(rng, 1, 200);
    const std::size_t p = testing::uniform(rng, 1, 220);
    const std::uint64_t range = testing::uniform(rng, 0, 50);
    std::vector<std::uint64_t> scores(n);
    std::vector<ClauseId> ids(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = testing::uniform(rng, 0, range);
      ids[i] = static_cast<ClauseId>(3 * i + 1);
    }
    std::vector<std::uint64_t> sorted = scores;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const std::uint64_t alpha = sorted[std::min(p, n) - 1];
    std::vector<ClauseId> want;
    for (std::size_t i = 0; i < n; ++i)
      if (scores[i] >= alpha) want.push_back(ids[i]);
    const CandidateSet got = select_candidates(scores, ids, p);
    if (got.alpha != alpha || got.ids != want)
      c.fail("differs from sort oracle, trial " + std::to_string(trial));
    if (p <= n) {
      const auto above = static_cast<std::size_t>(std::count_if(
          scores.begin(), scores.end(), [&](auto s) { return s > alpha; }));
      if (!(above < p && p <= got.ids.size()))
        c.fail("alpha bounds violated, trial " + std::to_string(trial));
    }
  }
  return {c.ok(), c.ok() ? "1000 score vectors match the sort oracle" : c.first()};
}

Verdict optimality() {
  Rng rng(1007);
  Check c;
  const Config cfg;
  const std::vector<std::string> names{"pure", "minpure", "maxpure",
                                       "lessinterfere", "mix"};
  std::vector<std::size_t> optimal(names.size(), 0);
  for (int trial = 0; trial < 200 && c.ok(); ++trial) {
    const Formula f = random_cnf(rng, {.max_vars = 10, .max_clauses = 14,
                                       .max_len = 4});
    const std::size_t best = oracle_max_blocked_subset(f).best_size;
    std::vector<Decomposition> ds = components(f, cfg);
    ds.push_back(mix_decompose(f, cfg).final);
    for (std::size_t k = 0; k < ds.size(); ++k) {
      const std::size_t l = ds[k].left.size();
      if (l > best) c.fail(names[k] + " beat the optimum, trial " + std::to_string(trial));
      optimal[k] += l == best;
    }
  }
  std::string detail = "optimum reached:";
  for (std::size_t k = 0; k < names.size(); ++k)
    detail += " " + names[k] + "=" + std::to_string(optimal[k]);
  const std::size_t single = *std::max_element(optimal.begin(), optimal.end() - 1);
  detail += optimal.back() >= single ? " (mix >= best single)"
                                     : " (mix < best single)";
  return {c.ok(), c.ok() ? detail + " of 200" : c.first()};
}

Verdict blockable_satisfiability() {
  Rng rng(1008);
  Check c;
  int made = 0, moved = 0;
  Config blockable;
  blockable.blockable = true;
  while (made < 200 && c.ok()) {
    const Formula f = random_cnf(rng, {.max_vars = 18, .max_clauses = 70,
                                       .max_len = 4});
    if (!oracle_satisfiable(f)) continue;
    ++made;
    const Decomposition li = less_interfere_decompose(f, Config{});
    const MoveResult m = move_blockable_clause(li.left, li.right, f, *li.left_trace);
    moved += static_cast<int>(m.moved);
    if (!oracle_satisfiable(f.restricted_to(m.left)))
      c.fail("L unsatisfiable after blockable move");
    const PipelineReport rep = mix_decompose(f, blockable);
    moved += static_cast<int>(rep.blockable_moved);
    if (!oracle_satisfiable(f.restricted_to(rep.final.left)))
      c.fail("mix L unsatisfiable with blockable move");
  }
  return {c.ok(), c.ok() ? "200 satisfiable formulas, " + std::to_string(moved) +
                               " clauses moved, L always satisfiable"
                         : c.first()};
}

// Runs a shell command; returns its exit status.
int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict scale(const fs::path& dir) {
  Rng rng(1009);
  const Formula f = testing::random_kcnf(rng, 23500, 100000, 3);
  const fs::path in = dir / "scale.cnf";
  std::ofstream(in) << serialize_dimacs(f, f.alive_ids());

  const auto start = std::chrono::steady_clock::now();
  const int code = run(std::string(BCD_TOOL) + " decompose " + in.string() +
                       " --algo mix --out-l " + (dir / "L.cnf").string() +
                       " --out-r " + (dir / "R.cnf").string() + " --report " +
                       (dir / "report.json").string() + " > " +
                       (dir / "scale.out").string());
  const double t = seconds_since(start);
  rusage usage{};
  getrusage(RUSAGE_CHILDREN, &usage);
  const double mb = static_cast<double>(usage.ru_maxrss) / 1024.0;
  std::string line = slurp(dir / "scale.out");
  if (!line.empty() && line.back() == '\n') line.pop_back();
  line = line.substr(line.find(" |F|") + 1);
  const bool ok = code == 0 && t < 120 && mb < 2048;
  return {ok, "exit " + std::to_string(code) + ", " + fmt(t) + " s, peak " +
                  fmt(mb, 0) + " MB; " + line};
}

// Drops timing from a report or bench artifact.
std::string untimed(const fs::path& p) {
  const std::string text = slurp(p);
  if (p.extension() == ".json") {
    auto j = nlohmann::json::parse(text);
    j.erase("elapsed_ms");
    j.erase("timing");
    if (j.contains("decomposition")) j["decomposition"].erase("phase_times");
    if (j.contains("pipeline"))
      for (auto& s : j["pipeline"]["stages"]) s.erase("elapsed_ms");
    return j.dump();
  }
  if (p.extension() == ".csv") {
    std::istringstream in(text);
    std::string out, header;
    std::getline(in, header);
    std::vector<bool> timing;
    std::istringstream hs(header);
    for (std::string col; std::getline(hs, col, ',');)
      timing.push_back(col.ends_with("time_s"));
    out = header + "\n";
    for (std::string line; std::getline(in, line);) {
      std::istringstream ls(line);
      std::size_t i = 0;
      for (std::string cell; std::getline(ls, cell, ','); ++i)
        out += (i < timing.size() && timing[i] ? "-" : cell) + ",";
      out += "\n";
    }
    return out;
  }
  return text;
}

// Stdout with the "time=" field blanked.
std::string untimed_stdout(std::string s) {
  for (std::size_t at = s.find("time="); at != std::string::npos;
       at = s.find("time=", at + 5)) {
    const std::size_t end = s.find(' ', at);
    s.erase(at + 5, end - at - 5);
  }
  return s;
}

Verdict determinism(const fs::path& dir) {
  const fs::path fx = dir / "fixtures";
  fs::create_directories(fx / "one");
  fs::create_directories(fx / "pair");
  fs::create_directories(fx / "slow");
  auto put = [](const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
  };
  put(fx / "tiny.cnf", "p cnf 2 3\n1 2 0\n-1 -2 0\n1 -2 0\n");
  put(fx / "three.cnf", "p cnf 3 3\n1 2 0\n1 3 0\n-1 2 0\n");
  put(fx / "malformed.cnf", "1 2 0\n");
  put(fx / "one" / "solvable.cnf", "p cnf 2 2\n1 2 0\n-1 -2 0\n");
  put(fx / "pair" / "a_wins.cnf", "p cnf 2 3\n1 2 0\n-1 2 0\n-1 -2 0\n");
  put(fx / "pair" / "b_tie.cnf", "p cnf 2 2\n1 2 0\n1 -2 0\n");
  {
    Rng rng(1010);
    const Formula f = testing::random_kcnf(rng, 3000, 12000, 3);
    put(fx / "slow" / "big.cnf", serialize_dimacs(f, f.alive_ids()));
  }
  put(fx / "vl.cnf", "p cnf 2 2\n1 2 0\n-1 -2 0\n");
  put(fx / "unit_pair.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  put(fx / "empty.cnf", "p cnf 0 0\n");

  const std::string tool = BCD_TOOL;
  const std::string f = fx.string() + "/";
  // {name, arguments; "@" stands for the output directory}
  const std::vector<std::pair<std::string, std::string>> examples = {
      {"decompose_mix_tiny", "decompose --algo mix " + f + "tiny.cnf"},
      {"decompose_pure_three", "decompose --algo pure " + f + "three.cnf"},
      {"decompose_malformed", "decompose " + f + "malformed.cnf"},
      {"bench_one", "bench " + f + "one"},
      {"bench_pair", "bench --algos pure,mix " + f + "pair"},
      {"bench_timeout", "bench --algos mix --timeout-s 0.000001 " + f + "slow"},
      {"verify_ok", "verify " + f + "vl.cnf " + f + "empty.cnf"},
      {"verify_fail", "verify " + f + "unit_pair.cnf " + f + "empty.cnf"},
      {"verify_empty", "verify " + f + "empty.cnf " + f + "empty.cnf"},
  };

  Check c;
  std::size_t artifacts = 0;
  for (const auto& [name, args] : examples) {
    std::vector<std::map<std::string, std::string>> runs;
    for (int r = 0; r < 2; ++r) {
      const fs::path out = dir / "runs" / (name + std::to_string(r));
      fs::create_directories(out);
      std::string cmd = tool + " " + args;
      if (args.starts_with("decompose"))
        cmd += " --out-l " + (out / "L.cnf").string() + " --out-r " +
               (out / "R.cnf").string() + " --report " +
               (out / "report.json").string();
      if (args.starts_with("bench"))
        cmd += " --out " + (out / "bench.csv").string() + " --summary " +
               (out / "bench_summary.csv").string();
      cmd += " > " + (out / "stdout.txt").string() + " 2> " +
             (out / "stderr.txt").string();
      std::map<std::string, std::string> got;
      got["exit"] = std::to_string(run(cmd));
      for (const auto& entry : fs::directory_iterator(out)) {
        const std::string file = entry.path().filename().string();
        if (file == "stdout.txt" || file == "stderr.txt")
          got[file] = untimed_stdout(slurp(entry.path()));
        else
          got[file] = untimed(entry.path());
      }
      runs.push_back(std::move(got));
    }
    artifacts += runs[0].size();
    if (runs[0] != runs[1]) c.fail(name + " differs between runs");
  }
  return {c.ok(), c.ok() ? std::to_string(examples.size()) + " examples, " +
                               std::to_string(artifacts) + " artifacts identical"
                         : c.first()};
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() /
                       ("bcd_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"symmetric decomposition", symmetric_decomposition},
      {"limited BCE soundness and first-call completeness", limited_bce},
      {"BCE confluence", confluence},
      {"mix dominance over components", mix_dominance},
      {"post-processing growth", growth},
      {"candidate-set order statistic", candidates},
      {"exhaustive optimum bound", optimality},
      {"blockable move keeps L satisfiable", blockable_satisfiability},
      {"scale: 1e5-clause 3-SAT with mix", [&] { return scale(dir); }},
      {"CLI determinism", [&] { return determinism(dir); }},
  };

  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << name << " - " << v.detail
              << " (" << fmt(seconds_since(start)) << " s)" << std::endl;
  }
  fs::remove_all(dir);
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/"
            << criteria.size() << " criteria passed" << std::endl;
  return failed;
}
