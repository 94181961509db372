#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "geoprob/types.hpp"

namespace geoprob::lp {

enum class Relation { LessEq, GreaterEq, Equal };
enum class Status { Optimal, Infeasible, Unbounded };

const char* status_name(Status s);

template <typename T>
struct Constraint {
  std::vector<T> coeffs;
  Relation rel = Relation::LessEq;
  T rhs{};
};

/// A small dense LP: maximize objective (or pure feasibility) subject to
/// linear constraints and per-variable bounds. Bounds default to [0, +inf);
/// either side may be removed, so free variables need no caller-side split.
template <typename T>
class Problem {
 public:
  explicit Problem(std::size_t num_vars)
      : num_vars_(num_vars),
        lower_(num_vars, std::optional<T>(T(0))),
        upper_(num_vars, std::nullopt) {}

  std::size_t num_vars() const { return num_vars_; }

  void maximize(std::vector<T> objective) {
    if (objective.size() != num_vars_) {
      throw std::invalid_argument("objective length does not match variable count");
    }
    objective_ = std::move(objective);
  }
  const std::optional<std::vector<T>>& objective() const { return objective_; }

  void add_constraint(std::vector<T> coeffs, Relation rel, T rhs) {
    if (coeffs.size() != num_vars_) {
      throw std::invalid_argument("constraint length does not match variable count");
    }
    constraints_.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
  const std::vector<Constraint<T>>& constraints() const { return constraints_; }

  void set_bounds(std::size_t j, std::optional<T> lo, std::optional<T> hi) {
    check_var(j);
    if (lo && hi && *lo > *hi) {
      throw std::invalid_argument("lower bound exceeds upper bound");
    }
    lower_[j] = std::move(lo);
    upper_[j] = std::move(hi);
  }
  void set_free(std::size_t j) { set_bounds(j, std::nullopt, std::nullopt); }

  const std::optional<T>& lower(std::size_t j) const { check_var(j); return lower_[j]; }
  const std::optional<T>& upper(std::size_t j) const { check_var(j); return upper_[j]; }

 private:
  void check_var(std::size_t j) const {
    if (j >= num_vars_) throw std::invalid_argument("variable index out of range");
  }

  std::size_t num_vars_;
  std::optional<std::vector<T>> objective_;
  std::vector<Constraint<T>> constraints_;
  std::vector<std::optional<T>> lower_, upper_;
};

template <typename T>
struct Outcome {
  Status status = Status::Infeasible;
  std::vector<T> solution;  // on Optimal
  T objective{};            // on Optimal
  T infeasibility{};        // phase-1 optimum when Infeasible (> 0)

  bool feasible() const { return status != Status::Infeasible; }
};

struct SolverParams {
  // Float mode only; both ignored by the exact instantiation.
  // Comparison tolerance for pivot decisions and the feasibility test.
  double tolerance = ArithmeticMode::kDefaultEpsilon;
  // Tolerance for the re-substitution self-check of returned solutions.
  double check_tolerance = ArithmeticMode::kDefaultEpsilon;
};

namespace detail {

template <typename T>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr bool kExact = true;
  static bool is_zero(const Rational& x, double) { return x.is_zero(); }
  static bool is_positive(const Rational& x, double) { return x > 0; }
};

template <>
struct ScalarOps<double> {
  static constexpr bool kExact = false;
  static bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
  static bool is_positive(double x, double tol) { return x > tol; }
};

}  // namespace detail

/// Two-phase dense simplex with Bland's smallest-index rule on both the
/// entering and leaving choices, so it terminates on every input (no
/// cycling) and is fully deterministic: same problem, same outcome,
/// including the vertex chosen.
template <typename T>
Outcome<T> solve(const Problem<T>& problem, const SolverParams& params = {});

/// True iff the constraint system admits a point (objective ignored).
template <typename T>
bool feasible(const Problem<T>& problem, const SolverParams& params = {});

/// Re-substitution check of a candidate solution against the original
/// constraints and bounds; exact for Rational, within tol for double.
template <typename T>
bool satisfies(const Problem<T>& problem, const std::vector<T>& x, double tol = 0.0);

/// Largest absolute constraint/bound violation of x, as a double.
template <typename T>
double max_violation(const Problem<T>& problem, const std::vector<T>& x);

using RationalProblem = Problem<Rational>;
using FloatProblem = Problem<double>;

}  // namespace geoprob::lp
