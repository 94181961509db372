// Python bindings for the main operations: exact probabilities, geometric
// oracles, game solving and Monte Carlo estimation.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoprob/exact.hpp"
#include "geoprob/games.hpp"
#include "geoprob/geometry.hpp"
#include "geoprob/montecarlo.hpp"
#include "geoprob/sampler.hpp"
#include "geoprob/types.hpp"

namespace py = pybind11;
using namespace geoprob;

namespace {

py::object big_to_int(const BigInt& x) {
  return py::module_::import("builtins").attr("int")(x.str());
}

py::object make_fraction(const Rational& q) {
  auto fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(big_to_int(boost::multiprecision::numerator(q)),
                  big_to_int(boost::multiprecision::denominator(q)));
}

ArithmeticMode parse_mode(const std::string& mode, double eps) {
  if (mode == "rational") return ArithmeticMode::rational();
  if (mode == "float") return ArithmeticMode::floating(eps);
  return ArithmeticMode::parse(mode);
}

sampler::PointCloud make_cloud(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw std::invalid_argument("need at least one point");
  return sampler::PointCloud(static_cast<int>(points.front().size()), points);
}

games::GameMatrix make_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("matrix needs at least one row and column");
  }
  const std::size_t m = rows.size(), n = rows.front().size();
  std::vector<double> entries;
  entries.reserve(m * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("ragged matrix");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return games::GameMatrix(m, n, std::move(entries));
}

// Verdicts map to True/False/None (None = degenerate float verdict).
py::object verdict_obj(Verdict v) {
  if (v == Verdict::Degenerate) return py::none();
  return py::bool_(v == Verdict::True);
}

exact::Scenario make_scenario(const std::string& name, std::optional<int> n,
                              std::optional<int> d, std::optional<int> m) {
  return exact::Scenario::make(name, n, d, m);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() =
      "Geometric probability laboratory: exact hull/subspace/game "
      "probabilities, LP-backed oracles, and Monte Carlo estimation.";

  // ---- exact ----
  mod.def("binom",
          [](std::int64_t n, std::int64_t k) { return big_to_int(exact::binom(n, k)); },
          py::arg("n"), py::arg("k"), "Binomial coefficient C(n, k).");
  mod.def("regions",
          [](std::int64_t n, std::int64_t d) { return big_to_int(exact::regions(n, d)); },
          py::arg("n"), py::arg("d"),
          "Regions cut from R^d by n generic hyperplanes through the origin.");
  mod.def("regions_by_recurrence",
          [](std::int64_t n, std::int64_t d) {
            return big_to_int(exact::regions_by_recurrence(n, d));
          },
          py::arg("n"), py::arg("d"));
  mod.def("p_exact",
          [](std::int64_t n, std::int64_t d) {
            return make_fraction(exact::p_exact(n, d).value());
          },
          py::arg("n"), py::arg("d"),
          "P(n symmetric random points in R^d lie in an open half-space), "
          "as a Fraction.");
  mod.def("scenario_probability",
          [](const std::string& scenario, std::optional<int> n,
             std::optional<int> d, std::optional<int> m) {
            return make_fraction(
                exact::scenario_probability(make_scenario(scenario, n, d, m))
                    .value());
          },
          py::arg("scenario"), py::arg("n") = std::nullopt,
          py::arg("d") = std::nullopt, py::arg("m") = std::nullopt);
  mod.def("step_distribution",
          [](int n) {
            py::list out;
            for (const auto& p : exact::step_distribution(n)) {
              out.append(make_fraction(p.value()));
            }
            return out;
          },
          py::arg("n"));

  // ---- geometry oracles ----
  mod.def("origin_in_hull",
          [](const std::vector<std::vector<double>>& points,
             const std::string& mode, double eps) {
            return verdict_obj(
                geometry::origin_in_hull(make_cloud(points), parse_mode(mode, eps)));
          },
          py::arg("points"), py::arg("mode") = "rational", py::arg("eps") = 1e-9,
          "True iff the origin lies in the convex hull (None = degenerate).");
  mod.def("in_common_halfspace",
          [](const std::vector<std::vector<double>>& points,
             const std::string& mode, double eps) {
            return verdict_obj(geometry::in_common_halfspace(
                make_cloud(points), parse_mode(mode, eps)));
          },
          py::arg("points"), py::arg("mode") = "rational", py::arg("eps") = 1e-9);
  mod.def("homogeneous_positive_solution",
          [](const std::vector<std::vector<double>>& matrix,
             const std::string& mode, double eps) {
            return verdict_obj(geometry::homogeneous_positive_solution(
                make_matrix(matrix).columns_cloud(), parse_mode(mode, eps)));
          },
          py::arg("matrix"), py::arg("mode") = "rational", py::arg("eps") = 1e-9,
          "Does Ax = 0 have a positive solution? Rows of `matrix` are rows of A.");
  mod.def("inhomogeneous_positive_solution",
          [](const std::vector<std::vector<double>>& matrix,
             const std::vector<double>& b, const std::string& mode, double eps) {
            return verdict_obj(geometry::inhomogeneous_positive_solution(
                make_matrix(matrix).columns_cloud(), b, parse_mode(mode, eps)));
          },
          py::arg("matrix"), py::arg("b"), py::arg("mode") = "rational",
          py::arg("eps") = 1e-9);
  mod.def("subspace_contains_positive",
          [](const std::vector<std::vector<double>>& matrix, bool strict,
             const std::string& mode, double eps) {
            return verdict_obj(geometry::subspace_contains_positive(
                make_matrix(matrix).columns_cloud(), strict,
                parse_mode(mode, eps)));
          },
          py::arg("matrix"), py::arg("strict") = false,
          py::arg("mode") = "rational", py::arg("eps") = 1e-9,
          "Does the row space of `matrix` contain a positive vector?");
  mod.def("positive_io",
          [](const std::vector<std::vector<double>>& matrix,
             const std::string& mode, double eps) {
            return verdict_obj(geometry::positive_io(
                make_matrix(matrix).columns_cloud(), parse_mode(mode, eps)));
          },
          py::arg("matrix"), py::arg("mode") = "rational", py::arg("eps") = 1e-9);
  mod.def("count_regions",
          [](const std::vector<std::vector<double>>& normals,
             const std::string& mode, double eps, bool allow_large,
             bool include_signs, unsigned threads) {
            geometry::SweepOptions opts;
            opts.allow_large = allow_large;
            opts.keep_signs = include_signs;
            opts.threads = threads;
            const auto census = geometry::count_regions(
                make_cloud(normals), parse_mode(mode, eps), opts);
            py::dict out;
            out["count"] = census.region_count;
            out["generic"] = census.generic;
            if (include_signs) {
              py::list signs;
              for (const auto& sv : census.feasible_signs) {
                py::list entry;
                for (auto s : sv.signs) entry.append(static_cast<int>(s));
                signs.append(entry);
              }
              out["signs"] = signs;
            }
            return out;
          },
          py::arg("normals"), py::arg("mode") = "rational", py::arg("eps") = 1e-9,
          py::arg("allow_large") = false, py::arg("include_signs") = false,
          py::arg("threads") = 0);
  mod.def("split_counts",
          [](const std::vector<std::vector<double>>& normals,
             const std::vector<double>& h, const std::string& mode, double eps,
             unsigned threads) {
            geometry::SweepOptions opts;
            opts.threads = threads;
            const auto split = geometry::split_counts(
                make_cloud(normals), h, parse_mode(mode, eps), opts);
            return py::make_tuple(split.tau1, split.tau2, split.generic);
          },
          py::arg("normals"), py::arg("h"), py::arg("mode") = "rational",
          py::arg("eps") = 1e-9, py::arg("threads") = 0,
          "(tau1, tau2, generic): regions meeting the new hyperplane vs not.");

  // ---- games ----
  mod.def("solve_game",
          [](const std::vector<std::vector<double>>& matrix,
             const std::string& mode, double eps) {
            const auto a = make_matrix(matrix);
            py::dict out;
            if (parse_mode(mode, eps).is_rational()) {
              const auto sol = games::solve_game_exact(a);
              out["value"] = make_fraction(sol.value);
              py::list p, q;
              for (const auto& x : sol.row_strategy) p.append(make_fraction(x));
              for (const auto& x : sol.col_strategy) q.append(make_fraction(x));
              out["row_strategy"] = p;
              out["col_strategy"] = q;
            } else {
              const auto sol = games::solve_game_float(a, eps);
              out["value"] = sol.value;
              out["row_strategy"] = sol.row_strategy;
              out["col_strategy"] = sol.col_strategy;
            }
            return out;
          },
          py::arg("matrix"), py::arg("mode") = "rational", py::arg("eps") = 1e-9,
          "Game value and optimal mixed strategies (Fractions in rational mode).");
  mod.def("row_player_favored",
          [](const std::vector<std::vector<double>>& matrix,
             const std::string& mode, double eps) {
            return verdict_obj(
                games::row_player_favored(make_matrix(matrix), parse_mode(mode, eps)));
          },
          py::arg("matrix"), py::arg("mode") = "rational", py::arg("eps") = 1e-9);
  mod.def("apply_sign_flips",
          [](const std::vector<std::vector<double>>& matrix,
             const std::vector<int>& row_signs, const std::vector<int>& col_signs) {
            games::SignFlip flip;
            for (int s : row_signs) flip.row_signs.push_back(static_cast<std::int8_t>(s));
            for (int s : col_signs) flip.col_signs.push_back(static_cast<std::int8_t>(s));
            const auto out = games::apply_sign_flips(make_matrix(matrix), flip);
            std::vector<std::vector<double>> rows(out.rows);
            for (std::size_t i = 0; i < out.rows; ++i) {
              rows[i].resize(out.cols);
              for (std::size_t j = 0; j < out.cols; ++j) rows[i][j] = out.at(i, j);
            }
            return rows;
          },
          py::arg("matrix"), py::arg("row_signs"), py::arg("col_signs"));
  mod.def("witness_signs",
          [](const std::vector<std::vector<double>>& matrix,
             const std::vector<double>& x) {
            const auto flip = games::witness_signs(make_matrix(matrix), x);
            std::vector<int> c(flip.row_signs.begin(), flip.row_signs.end());
            std::vector<int> d(flip.col_signs.begin(), flip.col_signs.end());
            return py::make_tuple(c, d);
          },
          py::arg("matrix"), py::arg("x"));
  mod.def("favorable_flip_count",
          [](const std::vector<std::vector<double>>& matrix,
             const std::string& mode, double eps, unsigned threads) {
            return games::favorable_flip_count(make_matrix(matrix),
                                               parse_mode(mode, eps), threads);
          },
          py::arg("matrix"), py::arg("mode") = "rational", py::arg("eps") = 1e-9,
          py::arg("threads") = 0);

  // ---- montecarlo ----
  mod.def("estimate",
          [](const std::string& scenario, std::optional<int> n,
             std::optional<int> d, std::optional<int> m, std::uint64_t trials,
             std::uint64_t seed, const std::string& mode, double eps,
             double level, bool random_b, unsigned threads,
             const std::optional<std::string>& dist,
             const std::optional<std::vector<double>>& fixed) {
            montecarlo::ExperimentConfig config(make_scenario(scenario, n, d, m));
            config.trials = trials;
            config.master_seed = seed;
            config.mode = parse_mode(mode, eps);
            config.confidence_level = level;
            config.random_b = random_b;
            config.threads = threads;
            if (dist || fixed) {
              auto spec = config.effective_cloud();
              if (dist) {
                const auto parsed = sampler::DistributionSpec::parse(*dist);
                for (auto& point : spec.points) {
                  if (point.kind != sampler::DistributionSpec::Kind::FixedPoint) {
                    point = parsed;
                  }
                }
              }
              if (fixed) {
                spec.points[0] = sampler::DistributionSpec::fixed_point(*fixed);
              }
              spec.validate();
              config.cloud = spec;
            }
            const auto report = montecarlo::estimate(config);
            auto loads = py::module_::import("json").attr("loads");
            return loads(report.to_json_string());
          },
          py::arg("scenario"), py::arg("n") = std::nullopt,
          py::arg("d") = std::nullopt, py::arg("m") = std::nullopt,
          py::arg("trials") = 10000, py::arg("seed") = 0,
          py::arg("mode") = "float", py::arg("eps") = 1e-9,
          py::arg("level") = 0.999, py::arg("random_b") = false,
          py::arg("threads") = 0, py::arg("dist") = std::nullopt,
          py::arg("fixed") = std::nullopt,
          "Monte Carlo estimate of a scenario probability; returns the "
          "JSON report as a dict.");
  mod.def("wilson_interval",
          [](std::uint64_t successes, std::uint64_t trials, double level) {
            return montecarlo::wilson_interval(successes, trials, level);
          },
          py::arg("successes"), py::arg("trials"), py::arg("level") = 0.95);
  mod.def("least_m_histogram",
          [](int n, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
            const auto hist = montecarlo::least_m_histogram(n, trials, seed, threads);
            py::dict out;
            out["n"] = hist.n;
            out["trials"] = hist.trials;
            out["counts"] = hist.counts;
            out["expected"] = hist.expected;
            out["chi_square"] = hist.chi_square;
            out["p_value"] = hist.p_value;
            out["seed"] = hist.master_seed;
            return out;
          },
          py::arg("n"), py::arg("trials"), py::arg("seed") = 0,
          py::arg("threads") = 0);

  // ---- sampling ----
  mod.def("sample_cloud",
          [](int dim, const std::vector<std::string>& specs, std::uint64_t seed,
             std::uint64_t index) {
            std::vector<sampler::DistributionSpec> parsed;
            parsed.reserve(specs.size());
            for (const auto& s : specs) parsed.push_back(sampler::DistributionSpec::parse(s));
            sampler::CloudSpec spec(dim, std::move(parsed));
            sampler::TrialRng rng(seed, index);
            return sampler::sample_cloud(spec, rng).points;
          },
          py::arg("dim"), py::arg("specs"), py::arg("seed") = 0,
          py::arg("index") = 0,
          "Sample a point cloud from per-point distribution specs "
          "(\"normal\", \"cube:<c>\", \"sphere\", \"fixed:<x1,...>\").");

  mod.attr("__version__") = "0.1.0";
}
