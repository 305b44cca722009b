#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fmscore/inference.hpp"
#include "fmscore/mle.hpp"
#include "fmscore/types.hpp"

namespace fmscore {

struct SimConfig {
  std::int64_t n1;
  std::int64_t n2;
  double p1_true;
  double p2_true;
  Margin margin;
  double level;
  Alternative alternative;
  std::int64_t replicates;
  std::uint64_t seed;
};

// One replicate that raised a numerical error, kept so the failure can be
// reproduced from the report alone.
struct FailureRecord {
  std::int64_t replicate;
  std::int64_t r1;
  std::int64_t r2;
  std::string code;

  friend bool operator==(const FailureRecord&, const FailureRecord&) = default;
};

struct SimResult {
  std::int64_t replicates_run;
  std::int64_t rejections;
  std::int64_t ci_covered;
  std::int64_t failures;
  double rejection_rate;
  double coverage_rate;
  // Indexed by CaseTag; sums to replicates_run when failures = 0.
  std::array<std::int64_t, kCaseTagCount> extreme_case_counts;
  // At most the first 100 failures, ordered by replicate index.
  std::vector<FailureRecord> failure_examples;

  std::int64_t case_count(CaseTag tag) const {
    return extreme_case_counts[static_cast<std::size_t>(tag)];
  }

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

// Monte Carlo operating characteristics: per replicate, draw the two arms
// from the (seed, replicate) stream, run the test and the interval, and
// tally rejections, coverage of the true difference, failures, and which
// MLE case fired. The result is a pure function of the config: independent
// of thread count, scheduling, and execution order.
SimResult simulate(const SimConfig& config);

// Single-threaded reference implementation; simulate must match it exactly.
SimResult simulate_serial(const SimConfig& config);

// Thread-count controls for the parallel path (no-ops without OpenMP).
void set_thread_count(int threads);
int max_thread_count();

}  // namespace fmscore
