#include "fmscore/sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmscore/ci.hpp"
#include "fmscore/errors.hpp"
#include "fmscore/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fmscore {

namespace {

// Per-thread cap on retained failure records. Each thread sees ascending
// replicate indices under a static schedule, so the union of per-thread
// prefixes always contains the global first 100.
constexpr std::size_t kFailureRecordCap = 100;

struct Tally {
  std::int64_t rejections = 0;
  std::int64_t covered = 0;
  std::int64_t failures = 0;
  std::array<std::int64_t, kCaseTagCount> cases{};
  std::vector<FailureRecord> failure_records;

  void merge(const Tally& other) {
    rejections += other.rejections;
    covered += other.covered;
    failures += other.failures;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      cases[i] += other.cases[i];
    }
    failure_records.insert(failure_records.end(),
                           other.failure_records.begin(),
                           other.failure_records.end());
  }
};

void check_config(const SimConfig& config) {
  if (config.n1 < 1 || config.n2 < 1) {
    throw InvalidSimConfig("group sizes must be at least 1");
  }
  if (!(config.p1_true >= 0.0 && config.p1_true <= 1.0) ||
      !(config.p2_true >= 0.0 && config.p2_true <= 1.0)) {
    throw InvalidSimConfig("true response probabilities must lie in [0, 1]");
  }
  if (!(config.level > 0.0 && config.level < 1.0)) {
    throw InvalidSimConfig("confidence level must lie in (0, 1)");
  }
  if (config.replicates < 1) {
    throw InvalidSimConfig("replicates must be at least 1, got " +
                           std::to_string(config.replicates));
  }
}

void run_replicate(const SimConfig& config, std::int64_t index, Tally& tally) {
  RandomStream stream(config.seed, std::uint64_t(index));
  const std::int64_t r1 = binomial_draw(config.n1, config.p1_true, stream);
  const std::int64_t r2 = binomial_draw(config.n2, config.p2_true, stream);
  try {
    const TrialCounts counts = validate_counts(r1, config.n1, r2, config.n2);
    const TestResult result = z_statistic(counts, config.margin);
    tally.cases[static_cast<std::size_t>(result.mle.case_tag)] += 1;
    const double alpha = 1.0 - config.level;
    if (p_value(result, config.alternative) <= alpha) {
      tally.rejections += 1;
    }
    const ConfidenceInterval ci = confidence_interval(counts, config.level);
    const double true_diff = config.p1_true - config.p2_true;
    if (ci.lower <= true_diff && true_diff <= ci.upper) {
      tally.covered += 1;
    }
  } catch (const Error& e) {
    tally.failures += 1;
    if (tally.failure_records.size() < kFailureRecordCap) {
      tally.failure_records.push_back(FailureRecord{index, r1, r2, e.code()});
    }
  }
}

SimResult finalize(const SimConfig& config, Tally&& tally) {
  std::sort(tally.failure_records.begin(), tally.failure_records.end(),
            [](const FailureRecord& a, const FailureRecord& b) {
              return a.replicate < b.replicate;
            });
  if (tally.failure_records.size() > kFailureRecordCap) {
    tally.failure_records.resize(kFailureRecordCap);
  }
  const double n = double(config.replicates);
  return SimResult{
      config.replicates,
      tally.rejections,
      tally.covered,
      tally.failures,
      double(tally.rejections) / n,
      double(tally.covered) / n,
      tally.cases,
      std::move(tally.failure_records),
  };
}

}  // namespace

SimResult simulate_serial(const SimConfig& config) {
  check_config(config);
  Tally tally;
  for (std::int64_t i = 0; i < config.replicates; ++i) {
    run_replicate(config, i, tally);
  }
  return finalize(config, std::move(tally));
}

SimResult simulate(const SimConfig& config) {
  check_config(config);
  Tally total;
#ifdef _OPENMP
  #pragma omp parallel
  {
    Tally local;
    #pragma omp for schedule(static)
    for (std::int64_t i = 0; i < config.replicates; ++i) {
      run_replicate(config, i, local);
    }
    #pragma omp critical
    total.merge(local);
  }
#else
  for (std::int64_t i = 0; i < config.replicates; ++i) {
    run_replicate(config, i, total);
  }
#endif
  return finalize(config, std::move(total));
}

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) {
    omp_set_num_threads(threads);
  }
#else
  (void)threads;
#endif
}

int max_thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace fmscore
