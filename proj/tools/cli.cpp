#include "cli.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "bcd/decompose.hpp"
#include "bcd/dimacs.hpp"
#include "bcd/errors.hpp"
#include "bcd/report.hpp"
#include "bcd/unit.hpp"

namespace bcd::cli {
namespace fs = std::filesystem;

std::string read_input(const std::string& path) {
  gzFile in = gzopen(path.c_str(), "rb");
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string data;
  char buf[1 << 16];
  int n;
  while ((n = gzread(in, buf, sizeof buf)) > 0) data.append(buf, static_cast<std::size_t>(n));
  const bool failed = n < 0;
  gzclose(in);
  if (failed) throw std::runtime_error("cannot read " + path);
  return data;
}

namespace {

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::vector<ClauseId> all_ids(const Formula& f) { return f.alive_ids(); }

bool write_file(const std::string& path, const std::string& data,
                std::ostream& err) {
  std::ofstream out(path, std::ios::binary);
  out << data;
  if (!out) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

struct Prepared {
  Formula formula;  // what gets decomposed
  std::size_t parsed_clauses = 0;
  DimacsInfo info;
  std::vector<Lit> trail;
  std::optional<Lit> conflict;
};

// Parse and unit-simplify. On a propagation conflict the parsed formula is
// decomposed as is.
Prepared prepare(const std::string& text) {
  Prepared p;
  Formula parsed = parse_dimacs(text, &p.info);
  p.parsed_clauses = parsed.num_alive();
  try {
    UnitSimplified us = unit_simplify(parsed);
    p.formula = std::move(us.formula);
    p.trail = std::move(us.trail);
  } catch (const ConflictDetected& e) {
    p.conflict = e.literal();
    p.formula = std::move(parsed);
  }
  return p;
}

nlohmann::json config_json(const Config& cfg) {
  auto opt = [](const auto& o) -> nlohmann::json {
    return o ? nlohmann::json(*o) : nlohmann::json(nullptr);
  };
  const char* skip = cfg.skip_final_move == FinalMoveSkip::kOn    ? "on"
                     : cfg.skip_final_move == FinalMoveSkip::kOff ? "off"
                                                                  : "auto";
  return {{"algo", to_string(cfg.algo)},
          {"mode", to_string(cfg.mode)},
          {"blockable", cfg.blockable},
          {"gamma_min", opt(cfg.gamma_min)},
          {"gamma_max", opt(cfg.gamma_max)},
          {"theta", opt(cfg.theta)},
          {"touch_cap", opt(cfg.touch_cap)},
          {"skip_final_move", skip},
          {"move_budget", cfg.move_try_budget},
          {"score_variant", cfg.score_variant == ScoreVariant::kComplement
                                ? "complement"
                                : "as-written"}};
}

}  // namespace

Outcome run_algorithm(const Formula& f, const Config& cfg,
                      const Deadline* deadline) {
  Outcome o;
  switch (cfg.algo) {
    case Algorithm::kPure:
      o.decomposition = pure_decompose(f, deadline);
      break;
    case Algorithm::kMinPure:
      o.decomposition = min_pure_decompose(f, cfg, deadline);
      break;
    case Algorithm::kMaxPure:
      o.decomposition = max_pure_decompose(f, cfg, deadline);
      break;
    case Algorithm::kLessInterfere:
      o.decomposition = less_interfere_decompose(f, cfg, deadline);
      break;
    case Algorithm::kMix:
      o.pipeline = mix_decompose(f, cfg, deadline);
      o.decomposition = o.pipeline->final;
      break;
  }
  o.decomposition.normalize();
  o.left_solvable = verify_solvable(f, o.decomposition.left);
  o.right_solvable = verify_solvable(f, o.decomposition.right);
  return o;
}

int run_decompose(const DecomposeOptions& opt, std::ostream& out,
                  std::ostream& err) {
  Stopwatch watch;
  Prepared p;
  try {
    p = prepare(read_input(opt.input));
  } catch (const ParseError& e) {
    err << opt.input << ": parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }
  for (const auto& w : p.info.warnings) err << opt.input << ": warning: " << w << "\n";
  const double prepare_ms = watch.millis();

  Outcome o;
  const Deadline deadline = Deadline::after(opt.cfg.timeout_s);
  try {
    o = run_algorithm(p.formula, opt.cfg, &deadline);
  } catch (const Timeout&) {
    err << opt.input << ": timeout after " << *opt.cfg.timeout_s << " s\n";
    return kTimeout;
  }
  const Decomposition& d = o.decomposition;
  const double elapsed_ms = watch.millis();

  nlohmann::json trail = nlohmann::json::array();
  for (Lit l : p.trail) trail.push_back(l.value());
  nlohmann::json report = {
      {"schema", 1},
      {"input", opt.input},
      {"config", config_json(opt.cfg)},
      {"parsed_clauses", p.parsed_clauses},
      {"clauses", p.formula.num_alive()},
      {"variables", p.formula.num_vars()},
      {"warnings", p.info.warnings},
      {"unit", {{"trail", trail},
                {"conflict", p.conflict.has_value()},
                {"conflict_variable",
                 p.conflict ? nlohmann::json(p.conflict->var())
                            : nlohmann::json(nullptr)}}},
      {"decomposition", to_json(d)},
      {"verified", {{"left", o.left_solvable}, {"right", o.right_solvable}}},
      {"symmetric", o.symmetric()},
      {"elapsed_ms", elapsed_ms},
      {"timing", {{"prepare_ms", prepare_ms},
                  {"decompose_ms", elapsed_ms - prepare_ms}}},
  };
  if (o.pipeline) report["pipeline"] = to_json(*o.pipeline);
  if (opt.trace && d.left_trace) report["trace"] = to_json(*d.left_trace);

  if (!write_file(opt.out_l, serialize_dimacs(p.formula, d.left), err) ||
      !write_file(opt.out_r, serialize_dimacs(p.formula, d.right), err) ||
      !write_file(opt.report, report.dump(2) + "\n", err))
    return kParse;

  out << opt.input << " |F|=" << p.formula.num_alive() << " L=" << d.left.size()
      << " frac=" << fixed(d.fraction().percent(), 1)
      << "% time=" << fixed(elapsed_ms / 1000.0, 3)
      << " symmetric=" << (o.symmetric() ? "true" : "false") << "\n";

  if (opt.verify && !o.symmetric()) {
    if (!o.left_solvable) err << "verify: L is not solvable by BCE\n";
    if (!o.right_solvable) err << "verify: R is not solvable by BCE\n";
    return kVerifyFailed;
  }
  return kOk;
}

namespace {

bool bench_input(const fs::path& p) {
  const std::string name = p.filename().string();
  for (const char* ext : {".cnf", ".cnf.gz", ".dimacs", ".dimacs.gz"}) {
    const std::string e = ext;
    if (name.size() > e.size() && name.ends_with(e)) return true;
  }
  return false;
}

struct Cell {
  bool timeout = false;
  Fraction fraction;
  double seconds = 0;
};

struct Row {
  std::string file;
  std::size_t clauses = 0;
  std::string error;
  std::vector<Cell> cells;
};

}  // namespace

int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<Algorithm> algos = opt.algos;
  if (algos.empty())
    algos = {Algorithm::kPure, Algorithm::kMinPure, Algorithm::kMaxPure,
             Algorithm::kLessInterfere, Algorithm::kMix};

  std::error_code ec;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(opt.dir, ec))
    if (entry.is_regular_file() && bench_input(entry.path()))
      files.push_back(entry.path());
  if (ec) {
    err << "error: cannot list " << opt.dir << ": " << ec.message() << "\n";
    return kParse;
  }
  if (files.empty()) {
    err << "error: no CNF files in " << opt.dir << "\n";
    return kParse;
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });

  std::vector<Row> rows(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < files.size();) {
      Row& row = rows[i];
      row.file = files[i].filename().string();
      Prepared p;
      try {
        p = prepare(read_input(files[i].string()));
      } catch (const std::exception& e) {
        row.error = e.what();
        continue;
      }
      row.clauses = p.formula.num_alive();
      for (Algorithm a : algos) {
        Config cfg = opt.cfg;
        cfg.algo = a;
        Cell cell;
        Stopwatch w;
        const Deadline deadline = Deadline::after(cfg.timeout_s);
        try {
          cell.fraction = run_algorithm(p.formula, cfg, &deadline)
                              .decomposition.fraction();
        } catch (const Timeout&) {
          cell.timeout = true;
        }
        cell.seconds = w.seconds();
        row.cells.push_back(cell);
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, files.size()));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "file,clauses";
  for (Algorithm a : algos)
    csv << ',' << to_string(a) << "_frac_pct," << to_string(a) << "_time_s,"
        << to_string(a) << "_timeout";
  csv << "\n";

  struct Totals {
    double frac_sum = 0, time_sum = 0;
    std::size_t solved = 0, best = 0, eq = 0, timeouts = 0;
  };
  std::vector<Totals> totals(algos.size());
  bool any_ok = false;
  for (const Row& row : rows) {
    if (!row.error.empty()) {
      err << row.file << ": skipped: " << row.error << "\n";
      continue;
    }
    any_ok = true;
    csv << row.file << ',' << row.clauses;
    std::optional<Fraction> top;
    for (std::size_t k = 0; k < algos.size(); ++k) {
      const Cell& c = row.cells[k];
      csv << ',' << (c.timeout ? "" : fixed(c.fraction.percent(), 2)) << ','
          << fixed(c.seconds, 3) << ',' << (c.timeout ? 1 : 0);
      if (c.timeout) {
        ++totals[k].timeouts;
        continue;
      }
      totals[k].frac_sum += c.fraction.percent();
      totals[k].time_sum += c.seconds;
      ++totals[k].solved;
      if (!top || *top < c.fraction) top = c.fraction;
    }
    csv << "\n";
    if (!top) continue;
    std::vector<std::size_t> winners;
    for (std::size_t k = 0; k < algos.size(); ++k) {
      const Cell& c = row.cells[k];
      if (!c.timeout && !(c.fraction < *top) && !(*top < c.fraction))
        winners.push_back(k);
    }
    for (std::size_t k : winners) {
      if (winners.size() == 1)
        ++totals[k].best;
      else
        ++totals[k].eq;
    }
  }
  if (!any_ok) {
    err << "error: no readable CNF files in " << opt.dir << "\n";
    return kParse;
  }

  std::ostringstream summary;
  summary << "algorithm,avg_frac_pct,best,eq,avg_time_s,timeouts\n";
  for (std::size_t k = 0; k < algos.size(); ++k) {
    const Totals& t = totals[k];
    const auto avg = [&](double sum) {
      return t.solved ? fixed(sum / static_cast<double>(t.solved), 2) : std::string();
    };
    summary << to_string(algos[k]) << ',' << avg(t.frac_sum) << ',' << t.best
            << ',' << t.eq << ','
            << (t.solved ? fixed(t.time_sum / static_cast<double>(t.solved), 3) : "")
            << ',' << t.timeouts << "\n";
  }
  if (!write_file(opt.out_csv, csv.str(), err) ||
      !write_file(opt.summary_csv, summary.str(), err))
    return kParse;
  out << summary.str();
  return kOk;
}

int run_verify(const std::string& left, const std::string& right,
               std::ostream& out, std::ostream& err) {
  bool ok = true;
  for (const auto& [name, path] : {std::pair{"L", left}, std::pair{"R", right}}) {
    Formula f;
    try {
      f = parse_dimacs(read_input(path));
    } catch (const ParseError& e) {
      err << path << ": parse error: " << e.what() << "\n";
      return kParse;
    } catch (const std::runtime_error& e) {
      err << "error: " << e.what() << "\n";
      return kParse;
    }
    const bool solvable = verify_solvable(f, all_ids(f));
    out << name << " (" << path << "): "
        << (solvable ? "solvable" : "NOT solvable") << " by BCE\n";
    ok = ok && solvable;
  }
  return ok ? kOk : kVerifyFailed;
}

namespace {

struct ConfigFlags {
  std::string algo = "mix";
  std::string mode = "application";
  std::string skip = "auto";
  std::string variant = "complement";
  std::uint32_t gamma_min = 0, gamma_max = 0, theta = 0;
  std::size_t touch_cap = 0;
  double timeout_s = 0;
  std::uint64_t move_budget = Config{}.move_try_budget;
  CLI::Option *gamma_min_opt, *gamma_max_opt, *theta_opt, *touch_cap_opt,
      *timeout_opt;
  bool blockable = false;

  void add(CLI::App* app, bool with_algo) {
    if (with_algo)
      app->add_option("--algo", algo, "pure|minpure|maxpure|lessinterfere|mix")
          ->capture_default_str();
    app->add_option("--mode", mode, "application|random")->capture_default_str();
    app->add_flag("--blockable", blockable, "also move blockable clauses (mix)");
    gamma_min_opt = app->add_option("--gamma-min", gamma_min, "minpure window");
    gamma_max_opt = app->add_option("--gamma-max", gamma_max, "maxpure window");
    theta_opt = app->add_option("--theta", theta, "lessinterfere batch divisor");
    touch_cap_opt = app->add_option("--touch-cap", touch_cap, "touch list cap");
    timeout_opt = app->add_option("--timeout-s", timeout_s, "time limit (seconds)");
    app->add_option("--skip-final-move", skip, "auto|on|off")->capture_default_str();
    app->add_option("--move-budget", move_budget,
                    "work cap per move_blocked test (0: unlimited)")
        ->capture_default_str();
    app->add_option("--score-variant", variant, "complement|as-written")
        ->capture_default_str();
  }

  // Throws InputError on unknown names or non-positive overrides.
  Config build() const {
    Config cfg;
    const auto a = parse_algorithm(algo);
    const auto m = parse_mode(mode);
    const auto s = parse_final_move_skip(skip);
    const auto v = parse_score_variant(variant);
    if (!a) throw InputError("unknown algorithm: " + algo);
    if (!m) throw InputError("unknown mode: " + mode);
    if (!s) throw InputError("unknown --skip-final-move value: " + skip);
    if (!v) throw InputError("unknown score variant: " + variant);
    cfg.algo = *a;
    cfg.mode = *m;
    cfg.skip_final_move = *s;
    cfg.score_variant = *v;
    cfg.blockable = blockable;
    cfg.move_try_budget = move_budget;
    if (gamma_min_opt->count()) cfg.gamma_min = gamma_min;
    if (gamma_max_opt->count()) cfg.gamma_max = gamma_max;
    if (theta_opt->count()) cfg.theta = theta;
    if (touch_cap_opt->count()) cfg.touch_cap = touch_cap;
    if (timeout_opt->count()) cfg.timeout_s = timeout_s;
    cfg.validate();
    return cfg;
  }
};

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Blocked clause decomposition of CNF formulas"};
  app.name("bcd");
  app.require_subcommand(1);

  DecomposeOptions dec;
  ConfigFlags dec_flags;
  auto* decompose = app.add_subcommand("decompose", "split a CNF into L and R");
  decompose->add_option("input", dec.input, "DIMACS file (.gz accepted)")->required();
  dec_flags.add(decompose, true);
  decompose->add_flag("--verify", dec.verify, "exit 4 unless both sides are solvable");
  decompose->add_option("--out-l", dec.out_l)->capture_default_str();
  decompose->add_option("--out-r", dec.out_r)->capture_default_str();
  decompose->add_option("--report", dec.report)->capture_default_str();
  decompose->add_flag("--trace", dec.trace, "include the elimination order of L");

  BenchOptions bench;
  ConfigFlags bench_flags;
  std::vector<std::string> algo_names;
  auto* bench_cmd = app.add_subcommand("bench", "run algorithms over a directory");
  bench_cmd->add_option("dir", bench.dir, "directory of CNF files")->required();
  bench_flags.add(bench_cmd, false);
  bench_cmd->add_option("--algos", algo_names, "algorithms to compare")->delimiter(',');
  bench_cmd->add_option("--jobs", bench.jobs, "files processed in parallel")
      ->capture_default_str();
  bench_cmd->add_option("--out", bench.out_csv)->capture_default_str();
  bench_cmd->add_option("--summary", bench.summary_csv)->capture_default_str();

  std::string left, right;
  auto* verify = app.add_subcommand("verify", "check that both sides are BCE-solvable");
  verify->add_option("left", left, "L.cnf")->required();
  verify->add_option("right", right, "R.cnf")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*decompose) {
      dec.cfg = dec_flags.build();
      return run_decompose(dec, std::cout, std::cerr);
    }
    if (*bench_cmd) {
      bench.cfg = bench_flags.build();
      for (const auto& name : algo_names) {
        const auto a = parse_algorithm(name);
        if (!a) throw InputError("unknown algorithm: " + name);
        bench.algos.push_back(*a);
      }
      return run_bench(bench, std::cout, std::cerr);
    }
    return run_verify(left, right, std::cout, std::cerr);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace bcd::cli
