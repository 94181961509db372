#include "geoprob/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "geoprob/exact.hpp"
#include "geoprob/games.hpp"
#include "geoprob/geometry.hpp"
#include "geoprob/montecarlo.hpp"
#include "geoprob/sampler.hpp"
#include "geoprob/types.hpp"

namespace geoprob::verify {

namespace {

using exact::Scenario;
using geometry::SweepOptions;
using montecarlo::ExperimentConfig;
using montecarlo::ExperimentReport;
using sampler::CloudSpec;
using sampler::DistributionSpec;
using sampler::PointCloud;
using sampler::TrialRng;

struct Check {
  bool ok = true;
  std::string detail;
};

Check pass(std::string detail) { return {true, std::move(detail)}; }
Check fail(std::string detail) { return {false, std::move(detail)}; }

PointCloud random_cloud(int n, int d, TrialRng& rng) {
  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) pts.push_back(sampler::sample_normal_vector(d, rng));
  return PointCloud(d, std::move(pts));
}

games::GameMatrix random_game(std::size_t m, std::size_t n, TrialRng& rng) {
  std::vector<double> entries(m * n);
  for (auto& e : entries) e = rng.normal();
  return games::GameMatrix(m, n, std::move(entries));
}

// ---- criterion 1: exact formula suite ----------------------------------

Check c1_exact_formulas(const Options&) {
  std::uint64_t checks = 0;
  for (int n = 1; n <= 40; ++n) {
    for (int d = 1; d <= 40; ++d) {
      if (exact::regions(n, d) != exact::regions_by_recurrence(n, d)) {
        return fail("regions mismatch at n=" + std::to_string(n) +
                    ", d=" + std::to_string(d));
      }
      ++checks;
    }
  }
  for (int n = 1; n <= 40; ++n) {
    for (int d = -5; d <= 45; ++d) {
      Rational sum = exact::p_exact(n, d).value() + exact::p_exact(n, n - d).value();
      if (sum != 1) {
        return fail("complementarity fails at n=" + std::to_string(n) +
                    ", d=" + std::to_string(d));
      }
      ++checks;
    }
  }
  for (int n = 1; n <= 30; ++n) {
    const Rational half_pow(1, BigInt(1) << (n - 1));
    if (exact::p_exact(n, 1).value() != half_pow) {
      return fail("p(n,1) specialization fails at n=" + std::to_string(n));
    }
    if (exact::p_exact(n, 2).value() != Rational(n) * half_pow) {
      return fail("p(n,2) specialization fails at n=" + std::to_string(n));
    }
    if (exact::p_exact(n + 1, n).value() !=
        1 - Rational(1, BigInt(1) << n)) {
      return fail("p(n+1,n) specialization fails at n=" + std::to_string(n));
    }
    checks += 3;
  }
  return pass(std::to_string(checks) + " identities hold exactly");
}

// ---- criterion 2: 3-decimal table of p(n,3) -----------------------------

Check c2_pn3_table(const Options&) {
  // Published 3-decimal values for p(n,3), n = 1..13; the n = 5 entry is a
  // known misprint (exact value 11/16 = .6875 rounds to .688, not .686).
  const int printed[13] = {1000, 1000, 1000, 875, 686, 500, 344,
                           227,  145,  90,   55,  33,  19};
  for (int n = 1; n <= 13; ++n) {
    const double p = exact::p_exact(n, 3).to_double();
    const int rounded = static_cast<int>(std::lround(p * 1000.0));
    if (n == 5) {
      if (exact::p_exact(5, 3).value() != Rational(11, 16)) {
        return fail("p(5,3) is not 11/16");
      }
      if (rounded != 688 || printed[4] != 686) {
        return fail("n=5 discrepancy not flagged as expected");
      }
      continue;
    }
    if (rounded != printed[n - 1]) {
      return fail("p(" + std::to_string(n) + ",3) rounds to " +
                  std::to_string(rounded) + ", reference " +
                  std::to_string(printed[n - 1]));
    }
  }
  return pass("12 of 13 rows match; n=5 flagged (11/16 = .6875 vs printed .686)");
}

// ---- criterion 3: region census agrees with the closed form -------------

Check c3_region_census(const Options& opts) {
  const ArithmeticMode mode = ArithmeticMode::rational();
  SweepOptions sweep;
  sweep.threads = opts.threads;
  sweep.keep_signs = false;
  std::uint64_t instances = 0;
  for (int d = 2; d <= 4; ++d) {
    for (int n = 2; n <= 10; ++n) {
      for (int rep = 0; rep < 50; ++rep) {
        TrialRng rng(0xC3000 + static_cast<std::uint64_t>(d),
                     static_cast<std::uint64_t>(n) * 100 +
                         static_cast<std::uint64_t>(rep));
        PointCloud normals = random_cloud(n, d, rng);
        auto census = geometry::count_regions(normals, mode, sweep);
        if (BigInt(census.region_count) != exact::regions(n, d) ||
            !census.generic) {
          return fail("census mismatch at n=" + std::to_string(n) + ", d=" +
                      std::to_string(d) + ", rep=" + std::to_string(rep) +
                      ": got " + std::to_string(census.region_count));
        }
        ++instances;
      }
    }
  }
  // Coplanar triple in R^3: a non-generic arrangement with 6 regions.
  PointCloud coplanar(3, {{1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  auto census = geometry::count_regions(coplanar, mode, sweep);
  if (census.region_count != 6 || census.generic) {
    return fail("coplanar triple gave " + std::to_string(census.region_count) +
                " regions, generic=" + std::to_string(census.generic));
  }
  return pass(std::to_string(instances) + " random censuses exact; coplanar triple -> 6, non-generic");
}

// ---- criterion 4: split counts realize the recurrence -------------------

Check c4_split_counts(const Options& opts) {
  const ArithmeticMode mode = ArithmeticMode::rational();
  SweepOptions sweep;
  sweep.threads = opts.threads;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 3 + rep % 6;  // total hyperplanes, 3..8
    const int d = 2 + rep % 2;  // 2..3
    TrialRng rng(0xC4000, static_cast<std::uint64_t>(rep));
    PointCloud normals = random_cloud(n - 1, d, rng);
    std::vector<double> h = sampler::sample_normal_vector(d, rng);
    auto split = geometry::split_counts(normals, h, mode, sweep);
    const BigInt tau1(split.tau1), tau2(split.tau2);
    if (tau1 + tau2 != exact::regions(n - 1, d) ||
        2 * tau1 + tau2 != exact::regions(n, d) ||
        tau1 != exact::regions(n - 1, d - 1) || !split.generic) {
      return fail("split relations fail at rep=" + std::to_string(rep) +
                  " (n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                  "): tau1=" + std::to_string(split.tau1) +
                  ", tau2=" + std::to_string(split.tau2));
    }
  }
  return pass("20 random configurations satisfy all three relations exactly");
}

// ---- criterion 5: Gordan exclusivity ------------------------------------

Check c5_gordan(const Options&) {
  const ArithmeticMode mode = ArithmeticMode::rational();
  const std::pair<int, int> shapes[] = {{2, 5}, {3, 5}, {3, 7}};
  for (const auto& [m, n] : shapes) {
    for (int rep = 0; rep < 1000; ++rep) {
      TrialRng rng(0xC5000 + static_cast<std::uint64_t>(m) * 16 +
                       static_cast<std::uint64_t>(n),
                   static_cast<std::uint64_t>(rep));
      PointCloud a = random_cloud(n, m, rng);  // n columns in R^m
      const bool row_space =
          verdict_bool(geometry::subspace_contains_positive(a, false, mode));
      const bool null_space =
          verdict_bool(geometry::homogeneous_positive_solution(a, mode));
      if (row_space == null_space) {
        return fail("Gordan exclusivity fails at m=" + std::to_string(m) +
                    ", n=" + std::to_string(n) + ", rep=" + std::to_string(rep) +
                    " (both " + (row_space ? "true" : "false") + ")");
      }
    }
  }
  return pass("3000 instances: exactly one of row/null space is positive");
}

// ---- criterion 6: hull/separation duality -------------------------------

Check c6_duality(const Options&) {
  const ArithmeticMode mode = ArithmeticMode::rational();
  for (int rep = 0; rep < 1000; ++rep) {
    const int n = 1 + rep % 8;
    const int d = 1 + (rep / 8) % 4;
    TrialRng rng(0xC6000, static_cast<std::uint64_t>(rep));
    PointCloud cloud = random_cloud(n, d, rng);
    const bool hull = verdict_bool(geometry::origin_in_hull(cloud, mode));
    const bool sep = verdict_bool(geometry::in_common_halfspace(cloud, mode));
    if (hull == sep) {
      return fail("duality fails at rep=" + std::to_string(rep) + " (n=" +
                  std::to_string(n) + ", d=" + std::to_string(d) + ")");
    }
  }
  return pass("1000 instances: origin_in_hull XOR in_common_halfspace");
}

// ---- criterion 7: game certificates -------------------------------------

// Reference value of a 2x2 game: pure saddle if one exists, otherwise the
// mixed closed form (a11 a22 - a12 a21) / (a11 + a22 - a12 - a21), verified
// against brute-force grid search over the row mixture.
double value_2x2_reference(const games::GameMatrix& a) {
  const double a11 = a.at(0, 0), a12 = a.at(0, 1);
  const double a21 = a.at(1, 0), a22 = a.at(1, 1);
  const double maximin =
      std::max(std::min(a11, a12), std::min(a21, a22));
  const double minimax =
      std::min(std::max(a11, a21), std::max(a12, a22));
  if (maximin == minimax) return maximin;
  return (a11 * a22 - a12 * a21) / (a11 + a22 - a12 - a21);
}

double value_2x2_grid(const games::GameMatrix& a) {
  const auto payoff = [&](double p) {
    return std::min(p * a.at(0, 0) + (1 - p) * a.at(1, 0),
                    p * a.at(0, 1) + (1 - p) * a.at(1, 1));
  };
  double best_p = 0.0, best = payoff(0.0);
  const int grid = 2000;
  for (int i = 1; i <= grid; ++i) {
    const double p = static_cast<double>(i) / grid;
    const double v = payoff(p);
    if (v > best) {
      best = v;
      best_p = p;
    }
  }
  // Ternary refinement around the best grid point (payoff is concave).
  double lo = std::max(0.0, best_p - 1.0 / grid);
  double hi = std::min(1.0, best_p + 1.0 / grid);
  for (int it = 0; it < 200; ++it) {
    const double p1 = lo + (hi - lo) / 3.0;
    const double p2 = hi - (hi - lo) / 3.0;
    if (payoff(p1) < payoff(p2)) lo = p1;
    else hi = p2;
  }
  return payoff((lo + hi) / 2.0);
}

Check c7_game_certificates(const Options&) {
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep) % 5;
    const std::size_t n = 1 + (static_cast<std::size_t>(rep) / 5) % 5;
    TrialRng rng(0xC7000, static_cast<std::uint64_t>(rep));
    games::GameMatrix a = random_game(m, n, rng);
    if (rep % 2 == 0) {
      auto sol = games::solve_game_exact(a);
      Rational min_col, max_row;
      for (std::size_t j = 0; j < n; ++j) {
        Rational v = 0;
        for (std::size_t i = 0; i < m; ++i) {
          v += sol.row_strategy[i] * to_rational(a.at(i, j));
        }
        if (j == 0 || v < min_col) min_col = v;
      }
      for (std::size_t i = 0; i < m; ++i) {
        Rational v = 0;
        for (std::size_t j = 0; j < n; ++j) {
          v += to_rational(a.at(i, j)) * sol.col_strategy[j];
        }
        if (i == 0 || v > max_row) max_row = v;
      }
      if (min_col != sol.value || max_row != sol.value) {
        return fail("exact certificate fails at rep=" + std::to_string(rep));
      }
    } else {
      auto sol = games::solve_game_float(a);
      double min_col = 0, max_row = 0;
      for (std::size_t j = 0; j < n; ++j) {
        double v = 0;
        for (std::size_t i = 0; i < m; ++i) v += sol.row_strategy[i] * a.at(i, j);
        if (j == 0 || v < min_col) min_col = v;
      }
      for (std::size_t i = 0; i < m; ++i) {
        double v = 0;
        for (std::size_t j = 0; j < n; ++j) v += a.at(i, j) * sol.col_strategy[j];
        if (i == 0 || v > max_row) max_row = v;
      }
      if (std::fabs(min_col - sol.value) > 1e-8 ||
          std::fabs(max_row - sol.value) > 1e-8) {
        return fail("float certificate fails at rep=" + std::to_string(rep));
      }
    }
  }
  // 2x2 closed form against LP and grid search.
  for (int rep = 0; rep < 200; ++rep) {
    TrialRng rng(0xC7A00, static_cast<std::uint64_t>(rep));
    games::GameMatrix a = random_game(2, 2, rng);
    const double reference = value_2x2_reference(a);
    const double grid = value_2x2_grid(a);
    const double lp_value = games::game_value_float(a);
    if (std::fabs(reference - grid) > 1e-6) {
      return fail("2x2 closed form disagrees with grid search at rep=" +
                  std::to_string(rep));
    }
    if (std::fabs(lp_value - reference) > 1e-6) {
      return fail("2x2 LP value disagrees with closed form at rep=" +
                  std::to_string(rep));
    }
  }
  return pass("1000 certificates (exact and 1e-8) and 200 closed-form 2x2 values");
}

// ---- criterion 8: exhaustive flip counts --------------------------------

Check c8_flip_counts(const Options& opts) {
  const ArithmeticMode mode = ArithmeticMode::rational();
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {1, 1}, {1, 2}, {2, 2}, {2, 3}, {3, 3}};
  for (const auto& [m, n] : shapes) {
    for (int rep = 0; rep < 25; ++rep) {
      TrialRng rng(0xC8000 + m * 16 + n, static_cast<std::uint64_t>(rep));
      games::GameMatrix a = random_game(m, n, rng);
      const std::uint64_t count =
          games::favorable_flip_count(a, mode, opts.threads);
      if (BigInt(count) != exact::regions(static_cast<std::int64_t>(m + n),
                                          static_cast<std::int64_t>(m))) {
        return fail("flip count misses r(m+n,m) at m=" + std::to_string(m) +
                    ", n=" + std::to_string(n) + ", rep=" + std::to_string(rep) +
                    ": got " + std::to_string(count));
      }
    }
  }
  return pass("125 matrices: flip count equals r(m+n, m) in every instance");
}

// ---- criterion 9: Monte Carlo vs exact ----------------------------------

struct MonteCarloCell {
  Scenario scenario;
  bool random_b = false;
  std::optional<ExactProbability> expect;  // sanity pin where stated
};

Check c9_montecarlo_grid(const Options& opts) {
  using exact::p_exact;
  const auto frac = [](long num, long den) {
    return ExactProbability(Rational(num, den));
  };
  std::vector<MonteCarloCell> cells = {
      {Scenario::bocce(8, 2), false, frac(1, 16)},
      {Scenario::bocce(4, 3), false, frac(7, 8)},
      {Scenario::bocce(6, 3), false, frac(1, 2)},
      {Scenario::bocce(8, 3), false, std::nullopt},
      {Scenario::bocce(13, 3), false, frac(79, 4096)},
      {Scenario::bocce_fixed_first(8, 2), false, frac(1, 16)},
      {Scenario::homogeneous_positive(1, 2), false, frac(1, 2)},
      {Scenario::inhomogeneous_positive(1, 2), false, frac(3, 4)},
      {Scenario::inhomogeneous_positive(1, 2), true, frac(3, 4)},
      {Scenario::subspace_positive(10, 3), false, std::nullopt},
      {Scenario::subspace_positive(10, 5), false, frac(1, 2)},
      {Scenario::subspace_positive(10, 7), false, std::nullopt},
      {Scenario::game_row_favor(1, 3), false, frac(1, 8)},
      {Scenario::game_row_favor(2, 2), false, frac(1, 2)},
      {Scenario::game_row_favor(2, 4), false, std::nullopt},
      {Scenario::positive_io(1, 3), false, frac(7, 8)},
  };
  // Reference values the grid is pinned to (see the exact-module tests for
  // the formula-level checks).
  if (exact::scenario_probability(cells[14].scenario) !=
      ExactProbability(p_exact(6, 2).value())) {
    return fail("game(2,4) reference is not p(6,2)");
  }

  std::uint64_t total_discards = 0;
  int retries = 0;
  double max_abs_z = 0.0;
  std::ostringstream failures;
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    const auto& cell = cells[idx];
    const ExactProbability expected = exact::scenario_probability(cell.scenario);
    if (cell.expect && !(expected == *cell.expect)) {
      return fail("reference value mismatch for " + cell.scenario.name() + "(" +
                  cell.scenario.dims_string() + ")");
    }
    bool cell_ok = false;
    for (int attempt = 0; attempt < 2 && !cell_ok; ++attempt) {
      ExperimentConfig config(cell.scenario);
      config.trials = 100000;
      config.master_seed = 0xC9000 + idx * 7 + static_cast<std::uint64_t>(attempt);
      config.confidence_level = 0.999;
      config.random_b = cell.random_b;
      config.threads = opts.threads;
      ExperimentReport report = montecarlo::estimate(config);
      total_discards += report.discarded;
      max_abs_z = std::max(max_abs_z, std::fabs(report.z_score));
      if (report.covers_exact()) {
        cell_ok = true;
      } else if (attempt == 0) {
        ++retries;
      } else {
        failures << " " << cell.scenario.name() << "(" << cell.scenario.dims_string()
                 << ") z=" << report.z_score;
      }
    }
    if (!cell_ok) {
      return fail("cell outside its 99.9% interval twice:" + failures.str());
    }
  }
  std::ostringstream detail;
  detail << cells.size() << " cells x 100000 trials inside 99.9% intervals"
         << " (max |z| = " << format_double(max_abs_z)
         << ", discards = " << total_discards << ", retries = " << retries << ")";
  return pass(detail.str());
}

// ---- criterion 10: least-m distribution ---------------------------------

Check c10_least_m(const Options& opts) {
  std::ostringstream detail;
  detail << "p-values:";
  for (int n : {3, 5, 8}) {
    bool ok = false;
    for (int attempt = 0; attempt < 2 && !ok; ++attempt) {
      auto hist = montecarlo::least_m_histogram(
          n, 10000, 0xCA000 + static_cast<std::uint64_t>(n) * 31 +
                        static_cast<std::uint64_t>(attempt),
          opts.threads);
      if (hist.p_value > 0.001) {
        ok = true;
        detail << " n=" << n << ": " << format_double(hist.p_value);
      }
    }
    if (!ok) return fail("least-m chi-square p <= 0.001 twice for n=" + std::to_string(n));
  }
  return pass(detail.str());
}

// ---- criterion 11: byte-identical reports -------------------------------

Check c11_reproducibility(const Options&) {
  ExperimentConfig config(Scenario::bocce(8, 2));
  config.trials = 20000;
  config.master_seed = 0xCB000;
  config.threads = 1;
  const std::string serial = montecarlo::estimate(config).to_json_string();
  config.threads = 4;
  const std::string parallel = montecarlo::estimate(config).to_json_string();
  config.threads = 0;
  const std::string repeat = montecarlo::estimate(config).to_json_string();
  if (serial != parallel || serial != repeat) {
    return fail("reports differ between serial/parallel/repeat runs");
  }
  ExperimentConfig game(Scenario::game_row_favor(2, 2));
  game.trials = 10000;
  game.master_seed = 0xCB001;
  game.threads = 1;
  const std::string game_serial = montecarlo::estimate(game).to_json_string();
  game.threads = 3;
  const std::string game_parallel = montecarlo::estimate(game).to_json_string();
  if (game_serial != game_parallel) {
    return fail("game reports differ between serial and parallel runs");
  }
  return pass("reports byte-identical across serial, parallel and repeat runs");
}

struct CriterionSpec {
  const char* name;
  std::function<Check(const Options&)> run;
};

const std::vector<CriterionSpec>& criteria() {
  static const std::vector<CriterionSpec> list = {
      {"exact formula suite", c1_exact_formulas},
      {"p(n,3) table reproduction", c2_pn3_table},
      {"region-count oracle agreement", c3_region_census},
      {"split counts realize the recurrence", c4_split_counts},
      {"Gordan exclusivity", c5_gordan},
      {"hull/separation duality", c6_duality},
      {"game certificate suite", c7_game_certificates},
      {"exhaustive flip count", c8_flip_counts},
      {"Monte Carlo vs exact grid", c9_montecarlo_grid},
      {"least-m distribution", c10_least_m},
      {"reproducibility", c11_reproducibility},
  };
  return list;
}

}  // namespace

int criterion_count() { return static_cast<int>(criteria().size()); }

CriterionResult run_criterion(int id, const Options& opts) {
  if (id < 1 || id > criterion_count()) {
    throw std::invalid_argument("criterion id out of range");
  }
  const auto& spec = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult result;
  result.id = id;
  result.name = spec.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    Check check = spec.run(opts);
    result.passed = check.ok;
    result.detail = check.detail;
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<CriterionResult> run_all(const Options& opts) {
  std::vector<CriterionResult> results;
  for (int id = 1; id <= criterion_count(); ++id) {
    CriterionResult r = run_criterion(id, opts);
    if (opts.log) *opts.log << format_result(r) << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name
      << " - " << r.detail << " [" << format_double(r.seconds) << "s]";
  return out.str();
}

}  // namespace geoprob::verify
