// Command-line surface: exact values, region counts, Monte Carlo runs, game
// solving, figure/table data emission, and the verification suite.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "geoprob/exact.hpp"
#include "geoprob/games.hpp"
#include "geoprob/montecarlo.hpp"
#include "geoprob/types.hpp"
#include "geoprob/verify.hpp"

namespace {

using namespace geoprob;

std::string three_decimals(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

// A minimal SVG polyline plot; enough to eyeball the emitted series.
void write_svg_plot(const std::string& path, const std::vector<double>& xs,
                    const std::vector<double>& ys) {
  const double width = 640, height = 400, margin = 40;
  double x_min = xs.front(), x_max = xs.back();
  double y_min = 0.0, y_max = 0.0;
  for (double y : ys) y_max = std::max(y_max, y);
  if (y_max == y_min) y_max = y_min + 1.0;
  if (x_max == x_min) x_max = x_min + 1.0;
  auto sx = [&](double x) {
    return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
  };
  auto sy = [&](double y) {
    return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
  };
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write SVG file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << sx(xs[i]) << "," << sy(ys[i]) << " ";
  }
  out << "\"/>\n</svg>\n";
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write output file: " + path);
  return file;
}

int cmd_exact(int n, int d) {
  const ExactProbability p = exact::p_exact(n, d);
  std::cout << p.str() << " = " << format_double(p.to_double()) << "\n";
  return 0;
}

int cmd_regions(int n, int d) {
  std::cout << exact::regions(n, d).str() << "\n";
  return 0;
}

struct SimulateArgs {
  std::string scenario;
  std::optional<int> n, d, m;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::string mode = "float";
  double level = 0.999;
  std::string dist;
  std::string fixed;
  bool random_b = false;
  unsigned threads = 0;
  std::string format = "json";
};

int cmd_simulate(const SimulateArgs& args) {
  montecarlo::ExperimentConfig config(
      exact::Scenario::make(args.scenario, args.n, args.d, args.m));
  config.trials = args.trials;
  config.master_seed = args.seed;
  config.mode = ArithmeticMode::parse(args.mode);
  config.confidence_level = args.level;
  config.random_b = args.random_b;
  config.threads = args.threads;
  if (!args.dist.empty() || !args.fixed.empty()) {
    sampler::CloudSpec spec = config.effective_cloud();
    if (!args.dist.empty()) {
      const auto dist = sampler::DistributionSpec::parse(args.dist);
      for (auto& point : spec.points) {
        if (point.kind != sampler::DistributionSpec::Kind::FixedPoint) {
          point = dist;
        }
      }
    }
    if (!args.fixed.empty()) {
      spec.points[0] = sampler::DistributionSpec::parse("fixed:" + args.fixed);
    }
    spec.validate();
    config.cloud = spec;
  }
  const auto report = montecarlo::estimate(config);
  if (args.format == "csv") {
    std::cout << montecarlo::ExperimentReport::csv_header() << "\n"
              << report.to_csv_row() << "\n";
  } else if (args.format == "json") {
    std::cout << report.to_json_string() << "\n";
  } else {
    throw CLI::ValidationError("--format must be json or csv");
  }
  return 0;
}

template <typename T>
std::string strategy_line(const std::vector<T>& strategy) {
  std::string out;
  for (std::size_t i = 0; i < strategy.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, Rational>) {
      out += fraction_string(strategy[i]);
    } else {
      out += format_double(strategy[i]);
    }
  }
  return out;
}

int cmd_game(const std::string& matrix_path, const std::string& mode_text) {
  games::GameMatrix a = [&] {
    if (matrix_path == "-") return games::GameMatrix::from_csv(std::cin);
    std::ifstream in(matrix_path);
    if (!in) throw std::runtime_error("cannot read matrix file: " + matrix_path);
    return games::GameMatrix::from_csv(in);
  }();
  const ArithmeticMode mode = ArithmeticMode::parse(mode_text);
  if (mode.is_rational()) {
    const auto sol = games::solve_game_exact(a);
    std::cout << "value: " << fraction_string(sol.value) << " = "
              << format_double(to_double(sol.value)) << "\n";
    std::cout << "row strategy: " << strategy_line(sol.row_strategy) << "\n";
    std::cout << "col strategy: " << strategy_line(sol.col_strategy) << "\n";
    std::cout << "favors row player: " << (sol.value > 0 ? "true" : "false")
              << "\n";
  } else {
    const auto sol = games::solve_game_float(a, mode.epsilon);
    std::cout << "value: " << format_double(sol.value) << "\n";
    std::cout << "row strategy: " << strategy_line(sol.row_strategy) << "\n";
    std::cout << "col strategy: " << strategy_line(sol.col_strategy) << "\n";
    std::cout << "favors row player: "
              << verdict_name(games::row_player_favored(a, mode)) << "\n";
  }
  return 0;
}

int cmd_table1(const std::string& output, const std::string& svg) {
  // Reference column: the widely printed 3-decimal table of p(n,3); its
  // n = 5 entry (.686) rounds 11/16 = .6875 the wrong way.
  static const char* reference[13] = {"1.000", "1.000", "1.000", "0.875",
                                      "0.686", "0.500", "0.344", "0.227",
                                      "0.145", "0.090", "0.055", "0.033",
                                      "0.019"};
  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << "n,p,fraction,reference,note\n";
  std::vector<double> xs, ys;
  for (int n = 1; n <= 13; ++n) {
    const ExactProbability p = exact::p_exact(n, 3);
    const double value = p.to_double();
    xs.push_back(n);
    ys.push_back(value);
    out << n << "," << three_decimals(value) << "," << p.str() << ","
        << reference[n - 1];
    if (n == 5) {
      out << ",exact 11/16 = 0.6875 rounds to 0.688; the reference value 0.686 "
             "is a misprint";
    }
    out << "\n";
  }
  if (!svg.empty()) write_svg_plot(svg, xs, ys);
  return 0;
}

int cmd_figure2(const std::string& output, const std::string& svg) {
  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << "m,p\n";
  std::vector<double> xs, ys;
  for (int m = 0; m <= 100; ++m) {
    const double p = exact::p_exact(100, m).to_double();
    xs.push_back(m);
    ys.push_back(p);
    out << m << "," << format_double(p) << "\n";
  }
  if (!svg.empty()) write_svg_plot(svg, xs, ys);
  return 0;
}

int cmd_figure3(int m_min, int m_max, const std::string& output,
                const std::string& svg) {
  if (m_min < 1 || m_max < m_min) {
    throw CLI::ValidationError("need 1 <= m-min <= m-max");
  }
  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << "m,n,p\n";
  std::vector<double> xs, ys;
  for (int m = m_min; m <= m_max; ++m) {
    const double p = exact::p_exact(3 * m, m).to_double();
    xs.push_back(m);
    ys.push_back(p);
    out << m << "," << 2 * m << "," << format_double(p) << "\n";
  }
  if (!svg.empty()) write_svg_plot(svg, xs, ys);
  return 0;
}

int cmd_verify(int criterion, unsigned threads) {
  verify::Options opts;
  opts.threads = threads;
  opts.log = &std::cout;
  std::vector<verify::CriterionResult> results;
  if (criterion == 0) {
    results = verify::run_all(opts);
  } else {
    results.push_back(verify::run_criterion(criterion, opts));
    std::cout << verify::format_result(results.back()) << std::endl;
  }
  return verify::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geometric probability laboratory: exact hull/game/subspace "
               "probabilities, LP-backed oracles and Monte Carlo checks"};
  app.require_subcommand(1);

  int n = 0, d = 0;
  auto* exact_cmd = app.add_subcommand("exact", "print p(n,d) as a fraction and decimal");
  exact_cmd->add_option("--n", n, "number of points")->required();
  exact_cmd->add_option("--d", d, "dimension (any integer)")->required();

  int rn = 0, rd = 0;
  auto* regions_cmd = app.add_subcommand("regions", "print the region count r(n,d)");
  regions_cmd->add_option("--n", rn, "number of hyperplanes")->required();
  regions_cmd->add_option("--d", rd, "dimension")->required();

  SimulateArgs sim;
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Monte Carlo estimate of a scenario probability");
  simulate_cmd
      ->add_option("--scenario", sim.scenario,
                   "bocce, bocce-fixed-first, homogeneous-positive, "
                   "inhomogeneous-positive, subspace-positive, game-row-favor, "
                   "positive-io")
      ->required();
  int sim_n = 0, sim_d = 0, sim_m = 0;
  auto* optn = simulate_cmd->add_option("--n", sim_n, "scenario n");
  auto* optd = simulate_cmd->add_option("--d", sim_d, "scenario d");
  auto* optm = simulate_cmd->add_option("--m", sim_m, "scenario m");
  simulate_cmd->add_option("--trials", sim.trials, "number of trials");
  simulate_cmd->add_option("--seed", sim.seed, "master seed")
      ->envname("GEOPROB_SEED");
  simulate_cmd->add_option("--mode", sim.mode, "rational | float | float:<eps>");
  simulate_cmd->add_option("--level", sim.level, "0.95 | 0.99 | 0.999");
  simulate_cmd->add_option("--dist", sim.dist,
                           "distribution for random points: normal | cube:<c> | "
                           "sphere");
  simulate_cmd->add_option("--fixed", sim.fixed,
                           "coordinates x1,..,xd for the fixed first point");
  simulate_cmd->add_flag("--random-b", sim.random_b,
                         "draw b instead of b = e_1 (inhomogeneous-positive)");
  simulate_cmd->add_option("--threads", sim.threads, "worker threads (0 = auto)");
  simulate_cmd->add_option("--format", sim.format, "json | csv");

  std::string matrix_path, game_mode = "rational";
  auto* game_cmd = app.add_subcommand("game", "solve a zero-sum game from a CSV matrix");
  game_cmd->add_option("--matrix", matrix_path, "CSV file, one matrix row per line ('-' for stdin)")
      ->required();
  game_cmd->add_option("--mode", game_mode, "rational | float | float:<eps>");

  int criterion = 0;
  unsigned verify_threads = 0;
  auto* verify_cmd =
      app.add_subcommand("verify", "run the verification suite (exit 1 on failure)");
  verify_cmd->add_option("--criterion", criterion, "run a single criterion (1-11)");
  verify_cmd->add_option("--threads", verify_threads, "worker threads (0 = auto)");

  std::string out_path, svg_path;
  auto* table1_cmd = app.add_subcommand("table1", "CSV of p(n,3) for n = 1..13");
  table1_cmd->add_option("--output", out_path, "write CSV here instead of stdout");
  table1_cmd->add_option("--svg", svg_path, "also write a minimal SVG line plot");

  std::string f2_out, f2_svg;
  auto* figure2_cmd = app.add_subcommand("figure2", "CSV of p(100,m) for m = 0..100");
  figure2_cmd->add_option("--output", f2_out, "write CSV here instead of stdout");
  figure2_cmd->add_option("--svg", f2_svg, "also write a minimal SVG line plot");

  int m_min = 1, m_max = 12;
  std::string f3_out, f3_svg;
  auto* figure3_cmd = app.add_subcommand(
      "figure3", "CSV of p(3m,m): row player with m strategies vs 2m");
  figure3_cmd->add_option("--m-min", m_min, "first m");
  figure3_cmd->add_option("--m-max", m_max, "last m");
  figure3_cmd->add_option("--output", f3_out, "write CSV here instead of stdout");
  figure3_cmd->add_option("--svg", f3_svg, "also write a minimal SVG line plot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*exact_cmd) return cmd_exact(n, d);
    if (*regions_cmd) return cmd_regions(rn, rd);
    if (*simulate_cmd) {
      if (*optn) sim.n = sim_n;
      if (*optd) sim.d = sim_d;
      if (*optm) sim.m = sim_m;
      return cmd_simulate(sim);
    }
    if (*game_cmd) return cmd_game(matrix_path, game_mode);
    if (*verify_cmd) return cmd_verify(criterion, verify_threads);
    if (*table1_cmd) return cmd_table1(out_path, svg_path);
    if (*figure2_cmd) return cmd_figure2(f2_out, f2_svg);
    if (*figure3_cmd) return cmd_figure3(m_min, m_max, f3_out, f3_svg);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
