#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "boolsketch/json_io.hpp"

namespace boolsketch::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kAlgorithm = 2 };

struct BenchConfig {
  std::string algo = "graph";         // graph | bool
  std::string sweep = "alpha";        // alpha | n
  std::vector<double> alphas{1.0};    // sample-count multipliers
  std::vector<std::size_t> ns{200};
  std::size_t s = 1;
  std::size_t d = 3;
  std::size_t trials = 10;
  std::size_t jobs = 1;
  std::size_t retries = 0;
  std::uint64_t seed = 1;
  std::string condition = "positive"; // bool only
};

struct TrialRow {
  std::size_t point = 0;
  double alpha = 1.0;
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double error = 0.0;                 // l2 distance of recovered to planted coefficients
  std::size_t samples = 0;
  double seconds = 0.0;               // algorithm stages only
  std::string failure;
};

struct BenchPoint {
  double alpha = 1.0;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double failure_rate = 0.0;
  double mean_seconds = 0.0;
};

struct BenchReport {
  std::vector<TrialRow> rows;         // sorted by (point, trial)
  std::vector<BenchPoint> points;
};

BenchReport run_bench(const BenchConfig& config);
void write_bench_csv(std::ostream& out, const BenchReport& report);
Json bench_json(const BenchReport& report, const BenchConfig& config);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace boolsketch::cli
