#include "geoprob/geometry.hpp"

#include <stdexcept>
#include <string>

#include "geoprob/exact.hpp"
#include "geoprob/lp.hpp"
#include "geoprob/parallel.hpp"

namespace geoprob::geometry {

namespace {

using std::size_t;

template <typename T>
T conv(double x) {
  if constexpr (std::is_same_v<T, Rational>) {
    return to_rational(x);
  } else {
    return x;
  }
}

lp::SolverParams oracle_params(const ArithmeticMode& mode) {
  lp::SolverParams params;
  if (!mode.is_rational()) {
    params.tolerance = mode.zero_band();
    // The self-check is a bug tripwire; 10x epsilon keeps it clear of the
    // residue a floored pivot can leave while staying far below data scale.
    params.check_tolerance = 10 * mode.epsilon;
  }
  return params;
}

/// Verdict for "the feasibility gap is zero": True when feasible with a
/// clean point, False when robustly infeasible. Float mode reports
/// Degenerate when the infeasibility gap sits inside (zero_band, epsilon],
/// when a nominally feasible point carries a residual above zero_band, or
/// when the solver stalled on a numerically degenerate instance.
template <typename T>
Verdict feasibility_verdict(const lp::Problem<T>& p, const ArithmeticMode& mode) {
  lp::Outcome<T> out;
  try {
    out = lp::solve(p, oracle_params(mode));
  } catch (const DegenerateVerdictError&) {
    if (mode.is_rational()) throw;
    return Verdict::Degenerate;
  }
  if (mode.is_rational()) return verdict_of(out.feasible());
  if (out.feasible()) {
    // The float solver may "absorb" a sub-epsilon infeasibility; the
    // residual of the returned point tells boundary-close instances apart
    // from robustly feasible ones.
    const double residual = lp::max_violation(p, out.solution);
    return residual <= mode.zero_band() ? Verdict::True : Verdict::Degenerate;
  }
  double gap;
  if constexpr (std::is_same_v<T, Rational>) {
    gap = to_double(out.infeasibility);
  } else {
    gap = out.infeasibility;
  }
  return gap > mode.epsilon ? Verdict::False : Verdict::Degenerate;
}

/// Verdict for "the optimal margin is positive" with boundary at zero.
template <typename T>
Verdict classify_margin(const T& margin, const ArithmeticMode& mode) {
  if constexpr (std::is_same_v<T, Rational>) {
    return verdict_of(margin > 0);
  } else {
    if (margin > mode.epsilon) return Verdict::True;
    if (margin <= mode.zero_band()) return Verdict::False;
    return Verdict::Degenerate;
  }
}

template <typename T>
Verdict hull_impl(const PointCloud& cloud, const ArithmeticMode& mode) {
  const size_t n = cloud.size();
  const auto d = static_cast<size_t>(cloud.dim);
  lp::Problem<T> p(n);  // weights t >= 0
  for (size_t i = 0; i < d; ++i) {
    std::vector<T> row(n);
    for (size_t j = 0; j < n; ++j) row[j] = conv<T>(cloud.points[j][i]);
    p.add_constraint(std::move(row), lp::Relation::Equal, T(0));
  }
  p.add_constraint(std::vector<T>(n, T(1)), lp::Relation::Equal, T(1));
  return feasibility_verdict(p, mode);
}

// Separation LP: variables v (box bounded) and a free margin variable.
// With signs present, point j enters as signs[j] * z_j.
template <typename T>
T separation_margin(const PointCloud& cloud, const std::int8_t* signs,
                    const std::vector<double>* extra_orthogonal,
                    const ArithmeticMode& mode) {
  const size_t n = cloud.size();
  const auto d = static_cast<size_t>(cloud.dim);
  lp::Problem<T> p(d + 1);  // v_0..v_{d-1}, delta
  for (size_t i = 0; i < d; ++i) p.set_bounds(i, T(-1), T(1));
  p.set_free(d);
  for (size_t j = 0; j < n; ++j) {
    std::vector<T> row(d + 1, T(0));
    const double s = signs ? static_cast<double>(signs[j]) : 1.0;
    for (size_t i = 0; i < d; ++i) row[i] = conv<T>(s * cloud.points[j][i]);
    row[d] = T(-1);
    p.add_constraint(std::move(row), lp::Relation::GreaterEq, T(0));
  }
  if (extra_orthogonal) {
    std::vector<T> row(d + 1, T(0));
    for (size_t i = 0; i < d; ++i) row[i] = conv<T>((*extra_orthogonal)[i]);
    p.add_constraint(std::move(row), lp::Relation::Equal, T(0));
  }
  std::vector<T> objective(d + 1, T(0));
  objective[d] = T(1);
  p.maximize(std::move(objective));
  auto out = lp::solve(p, oracle_params(mode));
  if (out.status != lp::Status::Optimal) {
    // Always feasible (v = 0) and box-bounded; a float run that still
    // fails is a numerically degenerate instance.
    if (mode.is_rational()) {
      throw std::logic_error("separation LP must have an optimum");
    }
    throw DegenerateVerdictError(
        "numerically degenerate separation LP; rerun in rational mode");
  }
  return out.objective;
}

template <typename T>
Verdict halfspace_impl(const PointCloud& cloud, const std::int8_t* signs,
                       const std::vector<double>* extra_orthogonal,
                       const ArithmeticMode& mode) {
  try {
    return classify_margin(
        separation_margin<T>(cloud, signs, extra_orthogonal, mode), mode);
  } catch (const DegenerateVerdictError&) {
    if (mode.is_rational()) throw;
    return Verdict::Degenerate;
  }
}

Verdict halfspace_verdict(const PointCloud& cloud, const std::int8_t* signs,
                          const std::vector<double>* extra_orthogonal,
                          const ArithmeticMode& mode) {
  if (mode.is_rational()) {
    return halfspace_impl<Rational>(cloud, signs, extra_orthogonal, mode);
  }
  return halfspace_impl<double>(cloud, signs, extra_orthogonal, mode);
}

// Equivalent strict-separation predicate in scaled form: some v has
// <v, s_j z_j> >= 1 for all j (any positive margin rescales to 1). A pure
// feasibility system, about half the tableau of the box-bounded margin LP,
// which matters inside the 2^n census sweeps. Verdicts agree with
// halfspace_verdict exactly in rational mode.
template <typename T>
Verdict scaled_halfspace_impl(const PointCloud& cloud, const std::int8_t* signs,
                              const std::vector<double>* extra_orthogonal,
                              const ArithmeticMode& mode) {
  const size_t n = cloud.size();
  const auto d = static_cast<size_t>(cloud.dim);
  lp::Problem<T> p(d);
  for (size_t i = 0; i < d; ++i) p.set_free(i);
  for (size_t j = 0; j < n; ++j) {
    std::vector<T> row(d);
    const double s = signs ? static_cast<double>(signs[j]) : 1.0;
    for (size_t i = 0; i < d; ++i) row[i] = conv<T>(s * cloud.points[j][i]);
    p.add_constraint(std::move(row), lp::Relation::GreaterEq, T(1));
  }
  if (extra_orthogonal) {
    std::vector<T> row(d);
    for (size_t i = 0; i < d; ++i) row[i] = conv<T>((*extra_orthogonal)[i]);
    p.add_constraint(std::move(row), lp::Relation::Equal, T(0));
  }
  return feasibility_verdict(p, mode);
}

// Sweep predicate: the fast scaled form where it is exact (rational mode);
// the margin LP in float mode, whose degenerate band survives intact.
Verdict sweep_halfspace_verdict(const PointCloud& cloud, const std::int8_t* signs,
                                const std::vector<double>* extra_orthogonal,
                                const ArithmeticMode& mode) {
  if (mode.is_rational()) {
    return scaled_halfspace_impl<Rational>(cloud, signs, extra_orthogonal, mode);
  }
  return halfspace_impl<double>(cloud, signs, extra_orthogonal, mode);
}

template <typename T>
Verdict inhomogeneous_impl(const PointCloud& columns, const std::vector<double>& b,
                           const ArithmeticMode& mode) {
  const size_t n = columns.size();
  const auto m = static_cast<size_t>(columns.dim);
  lp::Problem<T> p(n);  // x >= 0
  for (size_t i = 0; i < m; ++i) {
    std::vector<T> row(n);
    for (size_t j = 0; j < n; ++j) row[j] = conv<T>(columns.points[j][i]);
    p.add_constraint(std::move(row), lp::Relation::Equal, conv<T>(b[i]));
  }
  return feasibility_verdict(p, mode);
}

template <typename T>
Verdict subspace_impl(const PointCloud& columns, bool strict,
                      const ArithmeticMode& mode) {
  const size_t n = columns.size();
  const auto m = static_cast<size_t>(columns.dim);
  lp::Problem<T> p(m);  // y free
  for (size_t i = 0; i < m; ++i) p.set_free(i);
  for (size_t j = 0; j < n; ++j) {
    std::vector<T> row(m);
    for (size_t i = 0; i < m; ++i) row[i] = conv<T>(columns.points[j][i]);
    p.add_constraint(std::move(row), lp::Relation::GreaterEq,
                     strict ? T(1) : T(0));
  }
  if (!strict) {
    // sum_j (A^T y)_j = 1 normalizes "positive and nonzero"; accumulate in
    // T so the rational route stays exact.
    std::vector<T> row(m, T(0));
    for (size_t i = 0; i < m; ++i) {
      T s(0);
      for (size_t j = 0; j < n; ++j) s += conv<T>(columns.points[j][i]);
      row[i] = std::move(s);
    }
    p.add_constraint(std::move(row), lp::Relation::Equal, T(1));
  }
  return feasibility_verdict(p, mode);
}

template <typename T>
Verdict positive_io_impl(const PointCloud& columns, const ArithmeticMode& mode) {
  const size_t n = columns.size();
  const auto m = static_cast<size_t>(columns.dim);
  lp::Problem<T> p(n);  // x >= 0
  for (size_t i = 0; i < m; ++i) {
    std::vector<T> row(n);
    for (size_t j = 0; j < n; ++j) row[j] = conv<T>(columns.points[j][i]);
    p.add_constraint(std::move(row), lp::Relation::GreaterEq, T(1));
  }
  return feasibility_verdict(p, mode);
}

void check_sweep_size(size_t n, const SweepOptions& opts) {
  if (n > 20 && !opts.allow_large) {
    throw std::invalid_argument(
        "region sweep over " + std::to_string(n) +
        " normals needs 2^n LP solves; pass allow_large to override");
  }
  if (n >= 63) throw std::invalid_argument("region sweep size out of range");
}

// Big-endian bit layout: bit (n-1-j) holds the sign of z_{j+1}, so
// ascending masks enumerate sign vectors lexicographically (+1 before -1).
SignVector mask_to_signs(std::uint64_t mask, size_t n) {
  SignVector sv;
  sv.signs.resize(n);
  for (size_t j = 0; j < n; ++j) {
    sv.signs[j] = (mask >> (n - 1 - j)) & 1 ? std::int8_t{-1} : std::int8_t{1};
  }
  return sv;
}

}  // namespace

Verdict origin_in_hull(const PointCloud& cloud, const ArithmeticMode& mode) {
  cloud.validate();
  if (mode.is_rational()) return hull_impl<Rational>(cloud, mode);
  return hull_impl<double>(cloud, mode);
}

Verdict in_common_halfspace(const PointCloud& cloud, const ArithmeticMode& mode) {
  cloud.validate();
  return halfspace_verdict(cloud, nullptr, nullptr, mode);
}

Verdict homogeneous_positive_solution(const PointCloud& columns,
                                      const ArithmeticMode& mode) {
  // A positive solution of Ax = 0, normalized to sum 1, is exactly a convex
  // combination of the columns equal to the origin.
  return origin_in_hull(columns, mode);
}

Verdict inhomogeneous_positive_solution(const PointCloud& columns,
                                        const std::vector<double>& b,
                                        const ArithmeticMode& mode) {
  columns.validate();
  if (b.size() != static_cast<size_t>(columns.dim)) {
    throw std::invalid_argument("right-hand side length does not match row count");
  }
  bool b_zero = true;
  for (double x : b) {
    if (x != 0.0) {
      b_zero = false;
      break;
    }
  }
  if (b_zero) {
    throw std::invalid_argument(
        "b = 0: use homogeneous_positive_solution for the homogeneous system");
  }
  if (mode.is_rational()) return inhomogeneous_impl<Rational>(columns, b, mode);
  return inhomogeneous_impl<double>(columns, b, mode);
}

Verdict subspace_contains_positive(const PointCloud& columns, bool strict,
                                   const ArithmeticMode& mode) {
  columns.validate();
  if (mode.is_rational()) return subspace_impl<Rational>(columns, strict, mode);
  return subspace_impl<double>(columns, strict, mode);
}

Verdict positive_io(const PointCloud& columns, const ArithmeticMode& mode) {
  columns.validate();
  if (mode.is_rational()) return positive_io_impl<Rational>(columns, mode);
  return positive_io_impl<double>(columns, mode);
}

RegionCensus count_regions(const PointCloud& normals, const ArithmeticMode& mode,
                           const SweepOptions& opts) {
  normals.validate();
  const size_t n = normals.size();
  check_sweep_size(n, opts);
  const std::uint64_t total = std::uint64_t{1} << n;

  // A sign vector and its global negation describe a region R and its
  // mirror -R (replace the witness v by -v), so only the half with
  // z_1-sign +1 needs an LP; the other half is its mirror image.
  const std::uint64_t half = total >> 1;
  std::vector<std::uint8_t> feasible(half, 0);
  parallel_for(half, opts.threads, [&](size_t mask) {
    SignVector sv = mask_to_signs(mask, n);
    Verdict v = sweep_halfspace_verdict(normals, sv.signs.data(), nullptr, mode);
    if (v == Verdict::Degenerate) {
      throw DegenerateVerdictError(
          "degenerate sign-vector verdict in region sweep; rerun in rational mode");
    }
    feasible[mask] = v == Verdict::True ? 1 : 0;
  });

  RegionCensus census;
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    census.region_count += feasible[mask] ? 2 : 0;
  }
  if (opts.keep_signs) {
    census.feasible_signs.reserve(census.region_count);
    for (std::uint64_t mask = 0; mask < half; ++mask) {
      if (feasible[mask]) census.feasible_signs.push_back(mask_to_signs(mask, n));
    }
    // Mirrors, ascending: complement(total-1-mask) ascends as mask descends.
    for (std::uint64_t mask = half; mask-- > 0;) {
      if (feasible[mask]) {
        census.feasible_signs.push_back(mask_to_signs(total - 1 - mask, n));
      }
    }
  }
  census.generic =
      BigInt(census.region_count) == exact::regions(static_cast<std::int64_t>(n), normals.dim);
  return census;
}

SplitCounts split_counts(const PointCloud& normals, const std::vector<double>& h,
                         const ArithmeticMode& mode, const SweepOptions& opts) {
  normals.validate();
  const size_t n_minus_1 = normals.size();
  if (h.size() != static_cast<size_t>(normals.dim)) {
    throw std::invalid_argument("splitting normal length does not match dimension");
  }
  bool h_zero = true;
  for (double x : h) {
    if (x != 0.0) {
      h_zero = false;
      break;
    }
  }
  if (h_zero) throw std::invalid_argument("splitting normal must be nonzero");
  check_sweep_size(n_minus_1 + 1, opts);

  SweepOptions census_opts = opts;
  census_opts.keep_signs = true;
  RegionCensus census = count_regions(normals, mode, census_opts);

  std::vector<std::uint8_t> meets(census.feasible_signs.size(), 0);
  parallel_for(census.feasible_signs.size(), opts.threads, [&](size_t idx) {
    const SignVector& sv = census.feasible_signs[idx];
    Verdict v = sweep_halfspace_verdict(normals, sv.signs.data(), &h, mode);
    if (v == Verdict::Degenerate) {
      throw DegenerateVerdictError(
          "degenerate split verdict in region sweep; rerun in rational mode");
    }
    meets[idx] = v == Verdict::True ? 1 : 0;
  });

  SplitCounts out;
  for (std::uint8_t m : meets) out.tau1 += m;
  out.tau2 = census.region_count - out.tau1;

  const auto n = static_cast<std::int64_t>(n_minus_1) + 1;
  out.generic =
      BigInt(out.tau1 + out.tau2) == exact::regions(n - 1, normals.dim) &&
      BigInt(2 * out.tau1 + out.tau2) == exact::regions(n, normals.dim);
  return out;
}

}  // namespace geoprob::geometry
