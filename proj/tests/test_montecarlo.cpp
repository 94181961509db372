#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "geoprob/exact.hpp"
#include "geoprob/geometry.hpp"
#include "geoprob/montecarlo.hpp"
#include "geoprob/sampler.hpp"

using namespace geoprob;
using exact::Scenario;
using montecarlo::ExperimentConfig;
using montecarlo::wilson_interval;

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("wilson interval endpoints") {
  const auto [lo0, hi0] = wilson_interval(0, 100, 0.95);
  CHECK(lo0 == 0.0);
  CHECK(hi0 > 0.0);

  const auto [lo1, hi1] = wilson_interval(100, 100, 0.95);
  CHECK(hi1 == 1.0);
  CHECK(lo1 < 1.0);

  // Reference values from an independent evaluation of the Wilson formula
  // with z = 1.959963984540054 (and z = 2.5758293035489 below).
  const auto [lo, hi] = wilson_interval(50, 100, 0.95);
  CHECK(lo == doctest::Approx(0.4038315303659956).epsilon(1e-12));
  CHECK(hi == doctest::Approx(0.5961684696340044).epsilon(1e-12));

  const auto [lo99, hi99] = wilson_interval(3, 40, 0.99);
  CHECK(lo99 == doctest::Approx(0.019163255329385148).epsilon(1e-12));
  CHECK(hi99 == doctest::Approx(0.2517689761520616).epsilon(1e-12));

  CHECK_THROWS_AS(wilson_interval(5, 4, 0.95), std::invalid_argument);
  CHECK_THROWS_AS(wilson_interval(1, 4, 1.5), std::invalid_argument);
}

TEST_CASE("chi-square upper tail matches reference values") {
  using montecarlo::chi_square_upper_tail;
  CHECK(chi_square_upper_tail(7.815, 3) ==
        doctest::Approx(0.049993902974883875).epsilon(1e-10));
  CHECK(chi_square_upper_tail(3.0, 4) ==
        doctest::Approx(0.5578254003710748).epsilon(1e-10));
  CHECK(chi_square_upper_tail(15.0, 7) ==
        doctest::Approx(0.03599940476342876).epsilon(1e-10));
  CHECK(chi_square_upper_tail(0.5, 1) ==
        doctest::Approx(0.47950012218695337).epsilon(1e-10));
  CHECK(chi_square_upper_tail(0.0, 3) == 1.0);
}

TEST_CASE("estimate covers the exact value at unit-test scale") {
  ExperimentConfig config(Scenario::bocce(4, 2));
  config.trials = 4000;
  config.master_seed = 31337;
  const auto report = montecarlo::estimate(config);
  CHECK(report.trials == 4000);
  CHECK(report.exact_reference == ExactProbability(Rational(1, 2)));
  CHECK(report.covers_exact());
  CHECK(report.ci_low <= report.estimate);
  CHECK(report.estimate <= report.ci_high);
  CHECK(report.estimate >= 0.0);
  CHECK(report.estimate <= 1.0);
}

TEST_CASE("reports are byte-identical and thread-count independent") {
  ExperimentConfig config(Scenario::bocce(6, 2));
  config.trials = 3000;
  config.master_seed = 99;
  config.threads = 1;
  const std::string serial = montecarlo::estimate(config).to_json_string();
  config.threads = 4;
  const std::string parallel = montecarlo::estimate(config).to_json_string();
  CHECK(serial == parallel);

  // The schema carries exactly the report fields.
  CHECK(serial.find("\"scenario\":\"bocce\"") != std::string::npos);
  CHECK(serial.find("\"dims\":{\"n\":6,\"d\":2}") != std::string::npos);
  CHECK(serial.find("\"trials\":3000") != std::string::npos);
  CHECK(serial.find("\"exact\":\"3/16\"") != std::string::npos);
  CHECK(serial.find("\"seed\":99") != std::string::npos);
  CHECK(serial.find("\"ci\":[") != std::string::npos);
  CHECK(serial.find("\"z\":") != std::string::npos);
  CHECK(serial.find("\"discarded\":") != std::string::npos);
  CHECK(serial.find("\"successes\":") != std::string::npos);
  CHECK(serial.find("\"estimate\":") != std::string::npos);
}

TEST_CASE("trial verdicts match a direct oracle evaluation") {
  // The scenario machinery must agree with hand-run sampling + oracle,
  // trial by trial, on shared seeds.
  ExperimentConfig config(Scenario::homogeneous_positive(2, 4));
  config.master_seed = 2025;
  const auto spec = config.effective_cloud();
  int successes = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto outcome = montecarlo::run_trial(config, k);
    sampler::TrialRng rng(config.master_seed, k, 0);
    const auto cloud = sampler::sample_cloud(spec, rng);
    const Verdict direct = geometry::origin_in_hull(cloud, config.mode);
    if (direct != Verdict::Degenerate) {
      CHECK(outcome.success == (direct == Verdict::True));
    }
    successes += outcome.success ? 1 : 0;
  }
  CHECK(successes > 0);
  CHECK(successes < 200);
}

TEST_CASE("complementary events from the same trials sum to one") {
  ExperimentConfig config(Scenario::bocce(5, 2));
  config.master_seed = 7;
  std::uint64_t hull = 0, no_hull = 0;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const auto outcome = montecarlo::run_trial(config, k);
    // success == "origin NOT in hull"; the complementary event is computed
    // from the same trial verdict.
    if (outcome.success) ++no_hull;
    else ++hull;
  }
  CHECK(hull + no_hull == 500);
}

TEST_CASE("bocce-fixed-first uses the pinned first point") {
  ExperimentConfig config(Scenario::bocce_fixed_first(5, 3));
  const auto spec = config.effective_cloud();
  REQUIRE(spec.points.size() == 5);
  CHECK(spec.points[0].kind == sampler::DistributionSpec::Kind::FixedPoint);
  CHECK(spec.points[0].coordinates == std::vector<double>{1.0, 0.0, 0.0});
  CHECK(spec.points[1].kind == sampler::DistributionSpec::Kind::StdNormal);
}

TEST_CASE("config validation") {
  ExperimentConfig config(Scenario::bocce(4, 2));
  config.trials = 0;
  CHECK_THROWS_AS(montecarlo::estimate(config), std::invalid_argument);
  config.trials = 10;
  config.confidence_level = 0.5;
  CHECK_THROWS_AS(montecarlo::estimate(config), std::invalid_argument);
  config.confidence_level = 0.95;
  config.random_b = true;  // not an inhomogeneous scenario
  CHECK_THROWS_AS(montecarlo::estimate(config), std::invalid_argument);
  config.random_b = false;
  config.cloud = sampler::CloudSpec::iid(3, 4, sampler::DistributionSpec::std_normal());
  CHECK_THROWS_AS(montecarlo::estimate(config), std::invalid_argument);
}

TEST_CASE("square games are even money") {
  // p(n, n/2) = 1/2, here via the 3x3 game scenario.
  ExperimentConfig config(Scenario::game_row_favor(3, 3));
  config.trials = 10000;
  config.master_seed = 808;
  const auto report = montecarlo::estimate(config);
  CHECK(report.exact_reference == ExactProbability(Rational(1, 2)));
  CHECK(report.covers_exact());
}

TEST_CASE("inhomogeneous runs with fixed and random b") {
  for (bool random_b : {false, true}) {
    ExperimentConfig config(Scenario::inhomogeneous_positive(1, 2));
    config.trials = 3000;
    config.master_seed = 424242;
    config.random_b = random_b;
    const auto report = montecarlo::estimate(config);
    CAPTURE(random_b);
    CHECK(report.exact_reference == ExactProbability(Rational(3, 4)));
    CHECK(report.covers_exact());
  }
}

TEST_CASE("least-m histogram at small scale") {
  const auto hist = montecarlo::least_m_histogram(2, 2000, 55);
  REQUIRE(hist.counts.size() == 2);
  CHECK(hist.counts[0] + hist.counts[1] == 2000);
  // Expected frequencies are (1/2, 1/2).
  CHECK(std::fabs(static_cast<double>(hist.counts[0]) / 2000.0 - 0.5) < 0.05);
  CHECK(hist.expected[0] == doctest::Approx(1000.0));
  CHECK(hist.p_value > 0.001);

  const auto hist5 = montecarlo::least_m_histogram(5, 5000, 56);
  CHECK(hist5.p_value > 0.001);
  std::uint64_t total = 0;
  for (auto c : hist5.counts) total += c;
  CHECK(total == 5000);

  CHECK_THROWS_AS(montecarlo::least_m_histogram(1, 100, 0), std::invalid_argument);
  CHECK_THROWS_AS(montecarlo::least_m_histogram(11, 100, 0), std::invalid_argument);
}

TEST_CASE("csv row shape") {
  ExperimentConfig config(Scenario::game_row_favor(2, 2));
  config.trials = 500;
  config.master_seed = 3;
  const auto report = montecarlo::estimate(config);
  const std::string header = montecarlo::ExperimentReport::csv_header();
  const std::string row = report.to_csv_row();
  const auto commas = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',');
  };
  CHECK(commas(header) == commas(row));
  CHECK(row.find("game-row-favor,m=2;n=2,500,") == 0);
}

TEST_SUITE_END();
