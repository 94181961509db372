#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geoprob/types.hpp"

namespace geoprob::exact {

/// C(n, k); 0 for k < 0 or k > n.
BigInt binom(std::int64_t n, std::int64_t k);

/// Number of regions cut out of R^d by n generic hyperplanes through the
/// origin: r(n, d) = 2 * sum_{j=0}^{d-1} C(n-1, j).
BigInt regions(std::int64_t n, std::int64_t d);

/// Same quantity computed purely from the recurrence
/// r(n, d) = r(n-1, d) + r(n-1, d-1) with boundary values r(n, 2) = 2n and
/// r(n, d) = 2^n for n <= d. Memoized; agrees with regions() everywhere.
BigInt regions_by_recurrence(std::int64_t n, std::int64_t d);

/// Probability that n independent origin-symmetric random points in R^d all
/// lie in some open half-space, p(n, d) = r(n, d) / 2^n. By convention
/// p(n, d) = 0 for d <= 0, and p(n, d) = 1 for d >= n.
ExactProbability p_exact(std::int64_t n, std::int64_t d);

enum class ScenarioKind {
  Bocce,
  BocceFixedFirst,
  HomogeneousPositive,
  InhomogeneousPositive,
  SubspacePositive,
  GameRowFavor,
  PositiveIO,
};

/// A named experiment with its integer dimensions. Each scenario reduces to
/// a single p(*, *) reference value; see scenario_probability().
class Scenario {
 public:
  // Bocce in R^d with n balls: origin outside the convex hull.
  static Scenario bocce(int n, int d);
  // Same but the first ball's location is fixed instead of random.
  static Scenario bocce_fixed_first(int n, int d);
  // Ax = 0 has a positive solution, A random m x n with n > m.
  static Scenario homogeneous_positive(int m, int n);
  // Ax = b has a positive solution, b != 0, A random m x n with n > m.
  static Scenario inhomogeneous_positive(int m, int n);
  // A random m-dimensional subspace of R^n contains a positive vector.
  static Scenario subspace_positive(int n, int m);
  // A random m x n zero-sum game has positive value for the row player.
  static Scenario game_row_favor(int m, int n);
  // A random m x n linear map admits a positive input with positive output.
  static Scenario positive_io(int m, int n);

  ScenarioKind kind() const { return kind_; }

  bool has_nd() const;  // dims are (n, d) or (n, m); otherwise (m, n)
  int n() const;
  int d() const;
  int m() const;

  /// Canonical CLI/JSON name, e.g. "bocce", "game-row-favor".
  std::string name() const;

  /// Ordered dimension list as (key, value) pairs, e.g. {{"n",8},{"d",2}}.
  std::vector<std::pair<std::string, int>> dims() const;
  std::string dims_string() const;  // "n=8,d=2"

  static Scenario make(const std::string& name, std::optional<int> n,
                       std::optional<int> d, std::optional<int> m);

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.kind_ == b.kind_ && a.first_ == b.first_ && a.second_ == b.second_;
  }

 private:
  Scenario(ScenarioKind kind, int first, int second);

  ScenarioKind kind_;
  int first_;   // n for bocce/subspace, m for matrix scenarios
  int second_;  // d for bocce, m for subspace, n for matrix scenarios
};

/// Exact reference probability of the scenario's headline event.
ExactProbability scenario_probability(const Scenario& s);

/// Distribution of the least m for which the span of the first m of n random
/// vectors in R^n contains a positive vector; entry m (1-based) equals
/// C(n-1, m-1) / 2^(n-1). Entries sum to exactly 1.
std::vector<ExactProbability> step_distribution(int n);

}  // namespace geoprob::exact
