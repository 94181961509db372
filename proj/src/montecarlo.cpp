#include "geoprob/montecarlo.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "geoprob/games.hpp"
#include "geoprob/geometry.hpp"
#include "geoprob/parallel.hpp"

namespace geoprob::montecarlo {

namespace {

using exact::Scenario;
using exact::ScenarioKind;
using sampler::CloudSpec;
using sampler::DistributionSpec;
using sampler::PointCloud;
using sampler::TrialRng;

constexpr std::uint32_t kMaxAttempts = 64;

bool valid_level(double level) {
  return level == 0.95 || level == 0.99 || level == 0.999;
}

std::vector<double> unit_vector(int dim) {
  std::vector<double> e(static_cast<std::size_t>(dim), 0.0);
  e[0] = 1.0;
  return e;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!valid_level(confidence_level)) {
    throw std::invalid_argument("confidence level must be 0.95, 0.99 or 0.999");
  }
  if (random_b && scenario.kind() != ScenarioKind::InhomogeneousPositive) {
    throw std::invalid_argument("random_b only applies to inhomogeneous-positive");
  }
  if (cloud) {
    const CloudSpec def = default_cloud();
    if (cloud->dim != def.dim || cloud->size() != def.size()) {
      throw std::invalid_argument("cloud override shape does not match scenario");
    }
  }
}

sampler::CloudSpec ExperimentConfig::effective_cloud() const {
  if (cloud) return *cloud;
  return default_cloud();
}

sampler::CloudSpec ExperimentConfig::default_cloud() const {
  switch (scenario.kind()) {
    case ScenarioKind::Bocce:
      return CloudSpec::iid(scenario.d(), static_cast<std::size_t>(scenario.n()),
                            DistributionSpec::std_normal());
    case ScenarioKind::BocceFixedFirst: {
      CloudSpec spec = CloudSpec::iid(scenario.d(),
                                      static_cast<std::size_t>(scenario.n()),
                                      DistributionSpec::std_normal());
      spec.points[0] = DistributionSpec::fixed_point(unit_vector(scenario.d()));
      return spec;
    }
    case ScenarioKind::SubspacePositive:
      // Row space of an m x n matrix: n columns in R^m.
      return CloudSpec::iid(scenario.m(), static_cast<std::size_t>(scenario.n()),
                            DistributionSpec::std_normal());
    default:
      // Matrix scenarios: m x n coefficient/payoff matrix as n columns.
      return CloudSpec::iid(scenario.m(), static_cast<std::size_t>(scenario.n()),
                            DistributionSpec::std_normal());
  }
}

TrialOutcome run_trial(const ExperimentConfig& config, std::uint64_t trial_index) {
  const CloudSpec spec = config.effective_cloud();
  for (std::uint32_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    TrialRng rng(config.master_seed, trial_index, attempt);
    PointCloud cloud = sampler::sample_cloud(spec, rng);
    Verdict verdict = Verdict::Degenerate;
    bool success_on_true = true;
    try {
      switch (config.scenario.kind()) {
        case ScenarioKind::Bocce:
        case ScenarioKind::BocceFixedFirst:
          verdict = geometry::origin_in_hull(cloud, config.mode);
          success_on_true = false;  // the event is "origin NOT in the hull"
          break;
        case ScenarioKind::HomogeneousPositive:
          verdict = geometry::homogeneous_positive_solution(cloud, config.mode);
          break;
        case ScenarioKind::InhomogeneousPositive: {
          std::vector<double> b =
              config.random_b
                  ? sampler::sample_normal_vector(config.scenario.m(), rng)
                  : unit_vector(config.scenario.m());
          verdict = geometry::inhomogeneous_positive_solution(cloud, b, config.mode);
          break;
        }
        case ScenarioKind::SubspacePositive:
          verdict = geometry::subspace_contains_positive(cloud, /*strict=*/false,
                                                         config.mode);
          break;
        case ScenarioKind::GameRowFavor: {
          const std::size_t m = matrix_rows(cloud);
          const std::size_t n = matrix_cols(cloud);
          std::vector<double> entries(m * n);
          for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) entries[i * n + j] = cloud.entry(i, j);
          }
          games::GameMatrix a(m, n, std::move(entries));
          verdict = games::row_player_favored(a, config.mode);
          break;
        }
        case ScenarioKind::PositiveIO:
          verdict = geometry::positive_io(cloud, config.mode);
          break;
      }
    } catch (const DegenerateVerdictError&) {
      verdict = Verdict::Degenerate;  // stalled float solve: redraw
    }
    if (verdict == Verdict::Degenerate) continue;
    return {verdict == Verdict::True ? success_on_true : !success_on_true,
            attempt + 1};
  }
  throw std::runtime_error("trial kept drawing degenerate configurations");
}

ExperimentReport estimate(const ExperimentConfig& config) {
  config.validate();
  std::vector<TrialOutcome> outcomes(config.trials);
  parallel_for(config.trials, config.threads,
               [&](std::size_t k) { outcomes[k] = run_trial(config, k); });

  ExperimentReport report{config.scenario};
  report.trials = config.trials;
  for (const auto& o : outcomes) {
    report.successes += o.success ? 1 : 0;
    report.discarded += o.attempts - 1;
  }
  report.estimate =
      static_cast<double>(report.successes) / static_cast<double>(report.trials);
  std::tie(report.ci_low, report.ci_high) =
      wilson_interval(report.successes, report.trials, config.confidence_level);
  report.exact_reference = exact::scenario_probability(config.scenario);
  const double p = report.exact_reference.to_double();
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(report.trials));
  if (se > 0.0) {
    report.z_score = (report.estimate - p) / se;
  } else {
    report.z_score = report.estimate == p
                         ? 0.0
                         : std::copysign(INFINITY, report.estimate - p);
  }
  report.master_seed = config.master_seed;
  report.confidence_level = config.confidence_level;
  return report;
}

std::string ExperimentReport::to_json_string() const {
  nlohmann::ordered_json j;
  j["scenario"] = scenario.name();
  nlohmann::ordered_json dims;
  for (const auto& [key, value] : scenario.dims()) dims[key] = value;
  j["dims"] = dims;
  j["trials"] = trials;
  j["successes"] = successes;
  j["discarded"] = discarded;
  j["estimate"] = estimate;
  j["ci"] = {ci_low, ci_high};
  j["exact"] = exact_reference.str();
  j["z"] = z_score;
  j["seed"] = master_seed;
  return j.dump();
}

std::string ExperimentReport::csv_header() {
  return "scenario,dims,trials,successes,discarded,estimate,ci_low,ci_high,exact,z,seed";
}

std::string ExperimentReport::to_csv_row() const {
  std::string dims = scenario.dims_string();
  for (auto& c : dims) {
    if (c == ',') c = ';';
  }
  std::ostringstream out;
  out << scenario.name() << ',' << dims << ',' << trials << ',' << successes
      << ',' << discarded << ',' << format_double(estimate) << ','
      << format_double(ci_low) << ',' << format_double(ci_high) << ','
      << exact_reference.str() << ',' << format_double(z_score) << ','
      << master_seed;
  return out.str();
}

bool ExperimentReport::covers_exact() const {
  const double p = exact_reference.to_double();
  return ci_low <= p && p <= ci_high;
}

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials, double level) {
  if (trials < 1) throw std::invalid_argument("wilson_interval: trials must be >= 1");
  if (successes > trials) {
    throw std::invalid_argument("wilson_interval: successes exceed trials");
  }
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("wilson_interval: level must be in (0, 1)");
  }
  const boost::math::normal_distribution<double> normal(0.0, 1.0);
  const double z = boost::math::quantile(normal, 0.5 + level / 2.0);
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  // The extreme cases have exact endpoints; avoid leaving roundoff there.
  double lo = successes == 0 ? 0.0 : center - half;
  double hi = successes == trials ? 1.0 : center + half;
  if (lo < 0.0) lo = 0.0;
  if (hi > 1.0) hi = 1.0;
  return {lo, hi};
}

double chi_square_upper_tail(double statistic, int degrees_of_freedom) {
  if (degrees_of_freedom < 1) {
    throw std::invalid_argument("chi-square needs at least one degree of freedom");
  }
  if (statistic <= 0.0) return 1.0;
  const boost::math::chi_squared_distribution<double> dist(degrees_of_freedom);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

LeastMHistogram least_m_histogram(int n, std::uint64_t trials,
                                  std::uint64_t master_seed, unsigned threads) {
  if (n < 2 || n > 10) {
    throw std::invalid_argument("least_m_histogram needs 2 <= n <= 10");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  const auto dim = static_cast<std::size_t>(n);
  const ArithmeticMode mode = ArithmeticMode::floating();

  std::vector<std::uint8_t> least(trials, 0);
  parallel_for(trials, threads, [&](std::size_t k) {
    for (std::uint32_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      TrialRng rng(master_seed, k, attempt);
      // Rows v_1..v_n in R^n; the subspace oracle consumes columns in R^m.
      std::vector<std::vector<double>> rows(dim);
      for (auto& row : rows) row = sampler::sample_normal_vector(n, rng);
      int found = 0;
      bool degenerate = false;
      for (int m = 1; m <= n && !found && !degenerate; ++m) {
        std::vector<std::vector<double>> columns(dim);
        for (std::size_t j = 0; j < dim; ++j) {
          columns[j].resize(static_cast<std::size_t>(m));
          for (int i = 0; i < m; ++i) {
            columns[j][static_cast<std::size_t>(i)] =
                rows[static_cast<std::size_t>(i)][j];
          }
        }
        PointCloud cloud(m, std::move(columns));
        Verdict v = Verdict::Degenerate;
        try {
          v = geometry::subspace_contains_positive(cloud, false, mode);
        } catch (const DegenerateVerdictError&) {
        }
        if (v == Verdict::Degenerate) degenerate = true;
        else if (v == Verdict::True) found = m;
      }
      if (found) {
        least[k] = static_cast<std::uint8_t>(found);
        return;
      }
      // !found without degeneracy cannot happen (V_n = R^n); redraw anyway.
    }
    throw std::runtime_error("trial kept drawing degenerate configurations");
  });

  LeastMHistogram hist;
  hist.n = n;
  hist.trials = trials;
  hist.master_seed = master_seed;
  hist.counts.assign(static_cast<std::size_t>(n), 0);
  for (auto m : least) ++hist.counts[static_cast<std::size_t>(m - 1)];

  const auto reference = exact::step_distribution(n);
  hist.expected.resize(static_cast<std::size_t>(n));
  hist.chi_square = 0.0;
  for (int m = 1; m <= n; ++m) {
    const auto idx = static_cast<std::size_t>(m - 1);
    hist.expected[idx] =
        static_cast<double>(trials) * reference[idx].to_double();
    const double diff = static_cast<double>(hist.counts[idx]) - hist.expected[idx];
    hist.chi_square += diff * diff / hist.expected[idx];
  }
  hist.p_value = chi_square_upper_tail(hist.chi_square, n - 1);
  return hist;
}

}  // namespace geoprob::montecarlo
