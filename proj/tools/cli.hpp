#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcd/config.hpp"
#include "bcd/decomposition.hpp"
#include "bcd/postprocess.hpp"

namespace bcd::cli {

enum ExitCode {
  kOk = 0,
  kUsage = 1,
  kParse = 2,  // also unreadable input and empty bench directories
  kTimeout = 3,
  kVerifyFailed = 4,
};

// Whole file contents; gzip input is inflated transparently. Throws
// std::runtime_error if the file cannot be read.
std::string read_input(const std::string& path);

struct Outcome {
  Decomposition decomposition;  // normalized
  std::optional<PipelineReport> pipeline;
  bool left_solvable = false;
  bool right_solvable = false;
  bool symmetric() const { return left_solvable && right_solvable; }
};

// Runs cfg.algo on `f`, checks both sides and normalizes the pair.
Outcome run_algorithm(const Formula& f, const Config& cfg,
                      const Deadline* deadline);

struct DecomposeOptions {
  Config cfg;
  std::string input;
  std::string out_l = "L.cnf";
  std::string out_r = "R.cnf";
  std::string report = "report.json";
  bool verify = false;
  bool trace = false;
};

int run_decompose(const DecomposeOptions& opt, std::ostream& out,
                  std::ostream& err);

struct BenchOptions {
  Config cfg;
  std::string dir;
  std::vector<Algorithm> algos;  // empty: all five
  unsigned jobs = 1;
  std::string out_csv = "bench.csv";
  std::string summary_csv = "bench_summary.csv";
};

int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err);

int run_verify(const std::string& left, const std::string& right,
               std::ostream& out, std::ostream& err);

// Command-line entry point: `bcd decompose|bench|verify ...`.
int main_entry(int argc, char** argv);

}  // namespace bcd::cli
