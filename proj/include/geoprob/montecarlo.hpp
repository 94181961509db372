#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoprob/exact.hpp"
#include "geoprob/sampler.hpp"
#include "geoprob/types.hpp"

namespace geoprob::montecarlo {

/// A seeded estimation run of one scenario's probability.
struct ExperimentConfig {
  exact::Scenario scenario;
  std::optional<sampler::CloudSpec> cloud;  // default: per-scenario iid normals
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 0;
  ArithmeticMode mode = ArithmeticMode::floating();
  double confidence_level = 0.999;  // one of 0.95, 0.99, 0.999
  bool random_b = false;  // InhomogeneousPositive: draw b instead of b = e_1
  unsigned threads = 0;

  explicit ExperimentConfig(exact::Scenario s) : scenario(std::move(s)) {}

  void validate() const;

  /// The sampling shape the scenario prescribes (ignores any override).
  sampler::CloudSpec default_cloud() const;

  /// The cloud override when present, the scenario default otherwise.
  sampler::CloudSpec effective_cloud() const;
};

struct ExperimentReport {
  explicit ExperimentReport(exact::Scenario s) : scenario(std::move(s)) {}

  exact::Scenario scenario;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t discarded = 0;  // degenerate redraws (extra attempts)
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  ExactProbability exact_reference;
  double z_score = 0.0;
  std::uint64_t master_seed = 0;
  double confidence_level = 0.999;

  /// {"scenario": ..., "dims": {...}, "trials": ..., "successes": ...,
  ///  "discarded": ..., "estimate": ..., "ci": [lo, hi], "exact": "a/b",
  ///  "z": ..., "seed": ...} with deterministic key order and number
  /// formatting, so identical runs emit identical bytes.
  std::string to_json_string() const;

  static std::string csv_header();
  std::string to_csv_row() const;

  /// Whether the exact reference lies inside [ci_low, ci_high].
  bool covers_exact() const;
};

struct TrialOutcome {
  bool success = false;
  std::uint32_t attempts = 1;  // attempts - 1 draws were degenerate
};

/// Runs a single trial: derives the trial stream from (master_seed, index),
/// samples the scenario's random object, and queries the matching oracle.
/// Degenerate float verdicts are redrawn from fresh substreams and counted.
TrialOutcome run_trial(const ExperimentConfig& config, std::uint64_t trial_index);

/// Runs all trials (possibly concurrently; results are identical either
/// way) and assembles the report against the exact reference value.
ExperimentReport estimate(const ExperimentConfig& config);

/// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials, double level);

/// Least-m experiment: sample v_1..v_n iid standard normal in R^n and
/// record the least m for which span(v_1..v_m) contains a positive vector.
struct LeastMHistogram {
  int n = 0;
  std::uint64_t trials = 0;
  std::vector<std::uint64_t> counts;    // index m-1, m = 1..n
  std::vector<double> expected;         // trials * C(n-1, m-1) / 2^(n-1)
  double chi_square = 0.0;
  double p_value = 0.0;                 // upper tail, n-1 degrees of freedom
  std::uint64_t master_seed = 0;
};

LeastMHistogram least_m_histogram(int n, std::uint64_t trials,
                                  std::uint64_t master_seed, unsigned threads = 0);

/// Upper tail probability of the chi-square distribution (exposed for the
/// goodness-of-fit computation and its tests).
double chi_square_upper_tail(double statistic, int degrees_of_freedom);

}  // namespace geoprob::montecarlo
