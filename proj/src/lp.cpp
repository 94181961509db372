#include "geoprob/lp.hpp"

#include <algorithm>
#include <cstdlib>

namespace geoprob::lp {

const char* status_name(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

using std::size_t;

// How an original variable maps onto the nonnegative standardized columns.
template <typename T>
struct VarMap {
  enum class Kind { Shifted, NegShifted, Split } kind = Kind::Shifted;
  size_t col = 0;      // primary column
  size_t neg_col = 0;  // Split only
  T offset{};          // Shifted: lower bound; NegShifted: upper bound
};

template <typename T>
class Simplex {
 public:
  // Floor for acceptable float pivot elements; keeps 1/pivot amplification
  // of roundoff below the decision tolerances.
  static constexpr double kPivotFloor = 1e-7;
  // Reduced cost a float ray must exceed before unboundedness is believed.
  static constexpr double kRayThreshold = 1e-6;

  Simplex(const Problem<T>& problem, const SolverParams& params)
      : problem_(problem),
        tol_(detail::ScalarOps<T>::kExact ? 0.0 : params.tolerance),
        pivot_tol_(detail::ScalarOps<T>::kExact
                       ? 0.0
                       : std::max(params.tolerance, kPivotFloor)) {}

  Outcome<T> run() {
    build();
    phase_one();
    if (!phase1_feasible_) {
      Outcome<T> out;
      out.status = Status::Infeasible;
      out.infeasibility = infeasibility_;
      return out;
    }
    if (problem_.objective()) {
      purge_artificials();
      if (!phase_two()) {
        Outcome<T> out;
        out.status = Status::Unbounded;
        return out;
      }
    }
    Outcome<T> out;
    out.status = Status::Optimal;
    out.solution = extract();
    if (problem_.objective()) {
      const auto& c = *problem_.objective();
      T value{};
      for (size_t j = 0; j < c.size(); ++j) value += c[j] * out.solution[j];
      out.objective = value;
    }
    return out;
  }

 private:
  static bool is_zero(const T& x, double tol) { return detail::ScalarOps<T>::is_zero(x, tol); }
  static bool is_pos(const T& x, double tol) { return detail::ScalarOps<T>::is_positive(x, tol); }

  // Standardize: substitute bounded/free variables by nonnegative columns,
  // append upper-bound rows, normalize rhs signs, and add slack/surplus
  // columns. Artificial columns are appended in phase_one.
  void build() {
    const size_t n = problem_.num_vars();
    var_map_.resize(n);
    size_t col = 0;
    for (size_t j = 0; j < n; ++j) {
      const auto& lo = problem_.lower(j);
      const auto& hi = problem_.upper(j);
      auto& vm = var_map_[j];
      if (lo) {
        vm.kind = VarMap<T>::Kind::Shifted;
        vm.offset = *lo;
        vm.col = col++;
      } else if (hi) {
        vm.kind = VarMap<T>::Kind::NegShifted;
        vm.offset = *hi;
        vm.col = col++;
      } else {
        vm.kind = VarMap<T>::Kind::Split;
        vm.col = col++;
        vm.neg_col = col++;
      }
    }
    num_structural_ = col;

    struct RawRow {
      std::vector<T> coeffs;
      Relation rel;
      T rhs;
    };
    std::vector<RawRow> raw;
    raw.reserve(problem_.constraints().size() + n);

    for (const auto& cons : problem_.constraints()) {
      RawRow row{std::vector<T>(num_structural_, T(0)), cons.rel, cons.rhs};
      for (size_t j = 0; j < n; ++j) {
        const T& a = cons.coeffs[j];
        if (is_zero(a, 0.0)) continue;
        const auto& vm = var_map_[j];
        switch (vm.kind) {
          case VarMap<T>::Kind::Shifted:
            row.coeffs[vm.col] += a;
            row.rhs -= a * vm.offset;
            break;
          case VarMap<T>::Kind::NegShifted:
            row.coeffs[vm.col] -= a;
            row.rhs -= a * vm.offset;
            break;
          case VarMap<T>::Kind::Split:
            row.coeffs[vm.col] += a;
            row.coeffs[vm.neg_col] -= a;
            break;
        }
      }
      raw.push_back(std::move(row));
    }
    // Range rows for doubly bounded variables: x' <= hi - lo.
    for (size_t j = 0; j < n; ++j) {
      const auto& lo = problem_.lower(j);
      const auto& hi = problem_.upper(j);
      if (lo && hi) {
        RawRow row{std::vector<T>(num_structural_, T(0)), Relation::LessEq, *hi - *lo};
        row.coeffs[var_map_[j].col] = T(1);
        raw.push_back(std::move(row));
      }
    }

    const size_t m = raw.size();
    size_t num_slacks = 0;
    for (const auto& row : raw) {
      if (row.rel != Relation::Equal) ++num_slacks;
    }
    num_cols_ = num_structural_ + num_slacks + m;  // reserve one artificial per row
    first_artificial_ = num_structural_ + num_slacks;

    a_.assign(m, std::vector<T>(num_cols_, T(0)));
    rhs_.assign(m, T(0));
    basis_.assign(m, SIZE_MAX);
    artificial_rows_.clear();

    size_t slack = num_structural_;
    size_t artificial = first_artificial_;
    for (size_t r = 0; r < m; ++r) {
      auto& row = raw[r];
      bool negate = row.rhs < T(0);
      if (negate) {
        for (auto& v : row.coeffs) v = -v;
        row.rhs = -row.rhs;
        if (row.rel == Relation::LessEq) row.rel = Relation::GreaterEq;
        else if (row.rel == Relation::GreaterEq) row.rel = Relation::LessEq;
      }
      for (size_t j = 0; j < num_structural_; ++j) a_[r][j] = std::move(row.coeffs[j]);
      rhs_[r] = std::move(row.rhs);
      if (row.rel == Relation::LessEq) {
        a_[r][slack] = T(1);
        basis_[r] = slack++;
      } else if (row.rel == Relation::GreaterEq) {
        a_[r][slack++] = T(-1);
      }
      if (basis_[r] == SIZE_MAX) {
        a_[r][artificial] = T(1);
        basis_[r] = artificial;
        artificial_rows_.push_back(r);
        ++artificial;
      }
    }
    num_cols_used_ = artificial;  // trailing unused artificial slots stay zero
  }

  // Objective-row pivot bookkeeping: z = obj_const_ + sum obj_[j] * x_j.
  void price_out_basics() {
    for (size_t r = 0; r < a_.size(); ++r) {
      const size_t c = basis_[r];
      if (is_zero(obj_[c], 0.0)) continue;
      T factor = obj_[c];
      obj_const_ += factor * rhs_[r];
      const auto& row = a_[r];
      for (size_t j = 0; j < num_cols_used_; ++j) {
        if (!is_zero(row[j], 0.0)) obj_[j] -= factor * row[j];
      }
      obj_[c] = T(0);
    }
  }

  void pivot(size_t r, size_t c) {
    auto& row = a_[r];
    T inv_pivot = row[c];
    for (size_t j = 0; j < num_cols_used_; ++j) {
      if (!is_zero(row[j], 0.0)) row[j] /= inv_pivot;
    }
    rhs_[r] /= inv_pivot;
    row[c] = T(1);
    for (size_t i = 0; i < a_.size(); ++i) {
      if (i == r) continue;
      T factor = a_[i][c];
      if (is_zero(factor, 0.0)) continue;
      auto& other = a_[i];
      for (size_t j = 0; j < num_cols_used_; ++j) {
        if (!is_zero(row[j], 0.0)) other[j] -= factor * row[j];
      }
      other[c] = T(0);
      rhs_[i] -= factor * rhs_[r];
    }
    if (!is_zero(obj_[c], 0.0)) {
      T factor = obj_[c];
      obj_const_ += factor * rhs_[r];
      for (size_t j = 0; j < num_cols_used_; ++j) {
        if (!is_zero(row[j], 0.0)) obj_[j] -= factor * row[j];
      }
      obj_[c] = T(0);
    }
    basis_[r] = c;
  }

  // Bland's rule: entering column = smallest index with an improving
  // reduced cost and a usable pivot row; leaving row = smallest ratio,
  // ties by smallest basic variable index.
  //
  // Float-mode guards: pivot elements must clear pivot_tol_ (well above
  // roundoff, so a single pivot cannot amplify noise past the decision
  // tolerances), and a column only proves an unbounded ray when its
  // reduced cost is far above noise scale. Noise-level columns with no
  // usable pivot are treated as converged and skipped.
  bool iterate(bool ban_artificials) {
    const size_t iteration_cap = 2000 + 200 * (a_.size() + num_cols_used_);
    for (size_t iter = 0; iter <= iteration_cap; ++iter) {
      size_t entering = SIZE_MAX;
      size_t leave = SIZE_MAX;
      for (size_t j = 0; j < num_cols_used_; ++j) {
        if (ban_artificials && j >= first_artificial_) break;
        if (!is_pos(obj_[j], tol_)) continue;
        size_t candidate = SIZE_MAX;
        for (size_t r = 0; r < a_.size(); ++r) {
          if (!is_pos(a_[r][j], pivot_tol_)) continue;
          if (candidate == SIZE_MAX) {
            candidate = r;
            continue;
          }
          // Compare rhs_[r]/a_[r][j] vs rhs_[candidate]/a_[candidate][j]
          // by cross-multiplication (both pivots positive).
          T lhs = rhs_[r] * a_[candidate][j];
          T rhs = rhs_[candidate] * a_[r][j];
          if (lhs < rhs || (lhs == rhs && basis_[r] < basis_[candidate])) {
            candidate = r;
          }
        }
        if (candidate != SIZE_MAX) {
          entering = j;
          leave = candidate;
          break;
        }
        if (detail::ScalarOps<T>::kExact || ray_proven(obj_[j])) {
          return false;  // unbounded
        }
      }
      if (entering == SIZE_MAX) return true;  // optimal
      pivot(leave, entering);
    }
    throw std::runtime_error("simplex iteration limit exceeded");
  }

  static bool ray_proven(const T& reduced_cost) {
    if constexpr (detail::ScalarOps<T>::kExact) {
      return reduced_cost > 0;
    } else {
      return reduced_cost > kRayThreshold;
    }
  }

  void phase_one() {
    obj_.assign(num_cols_used_, T(0));
    obj_const_ = T(0);
    if (artificial_rows_.empty()) {
      phase1_feasible_ = true;
      return;
    }
    for (size_t j = first_artificial_; j < num_cols_used_; ++j) obj_[j] = T(-1);
    price_out_basics();
    // max of -(sum of artificials) is always attained (bounded above by 0).
    if (!iterate(/*ban_artificials=*/false)) {
      if constexpr (detail::ScalarOps<T>::kExact) {
        throw std::logic_error("phase-1 objective reported unbounded");
      }
      throw DegenerateVerdictError(
          "simplex stalled on a numerically degenerate instance");
    }
    T total = -obj_const_;  // optimal sum of artificials
    if (is_pos(total, tol_)) {
      phase1_feasible_ = false;
      infeasibility_ = total;
    } else {
      phase1_feasible_ = true;
    }
  }

  // Pivot basic artificials out where possible; rows that cannot pivot are
  // redundant and keep a zero-valued artificial that is banned from
  // re-entering in phase two.
  void purge_artificials() {
    for (size_t r = 0; r < a_.size(); ++r) {
      if (basis_[r] < first_artificial_) continue;
      size_t c = SIZE_MAX;
      for (size_t j = 0; j < first_artificial_; ++j) {
        if (!is_zero(a_[r][j], pivot_tol_)) {
          c = j;
          break;
        }
      }
      if (c != SIZE_MAX) pivot(r, c);
    }
  }

  bool phase_two() {
    const auto& c_orig = *problem_.objective();
    obj_.assign(num_cols_used_, T(0));
    obj_const_ = T(0);
    for (size_t j = 0; j < c_orig.size(); ++j) {
      const T& cj = c_orig[j];
      if (is_zero(cj, 0.0)) continue;
      const auto& vm = var_map_[j];
      switch (vm.kind) {
        case VarMap<T>::Kind::Shifted:
          obj_[vm.col] += cj;
          obj_const_ += cj * vm.offset;
          break;
        case VarMap<T>::Kind::NegShifted:
          obj_[vm.col] -= cj;
          obj_const_ += cj * vm.offset;
          break;
        case VarMap<T>::Kind::Split:
          obj_[vm.col] += cj;
          obj_[vm.neg_col] -= cj;
          break;
      }
    }
    price_out_basics();
    return iterate(/*ban_artificials=*/true);
  }

  std::vector<T> extract() const {
    std::vector<T> standardized(num_cols_used_, T(0));
    for (size_t r = 0; r < a_.size(); ++r) standardized[basis_[r]] = rhs_[r];
    std::vector<T> x(problem_.num_vars(), T(0));
    for (size_t j = 0; j < x.size(); ++j) {
      const auto& vm = var_map_[j];
      switch (vm.kind) {
        case VarMap<T>::Kind::Shifted:
          x[j] = vm.offset + standardized[vm.col];
          break;
        case VarMap<T>::Kind::NegShifted:
          x[j] = vm.offset - standardized[vm.col];
          break;
        case VarMap<T>::Kind::Split:
          x[j] = standardized[vm.col] - standardized[vm.neg_col];
          break;
      }
    }
    return x;
  }

  const Problem<T>& problem_;
  double tol_;
  double pivot_tol_;

  std::vector<VarMap<T>> var_map_;
  size_t num_structural_ = 0;
  size_t num_cols_ = 0;
  size_t num_cols_used_ = 0;
  size_t first_artificial_ = 0;

  std::vector<std::vector<T>> a_;
  std::vector<T> rhs_;
  std::vector<size_t> basis_;
  std::vector<size_t> artificial_rows_;

  std::vector<T> obj_;
  T obj_const_{};

  bool phase1_feasible_ = false;
  T infeasibility_{};
};

}  // namespace

template <typename T>
Outcome<T> solve(const Problem<T>& problem, const SolverParams& params) {
  Simplex<T> simplex(problem, params);
  Outcome<T> out = simplex.run();
  if (out.status == Status::Optimal) {
    const double check_tol =
        detail::ScalarOps<T>::kExact ? 0.0 : params.check_tolerance;
    if (!satisfies(problem, out.solution, check_tol)) {
      throw std::logic_error("simplex returned a solution that fails re-substitution");
    }
  }
  return out;
}

template <typename T>
bool feasible(const Problem<T>& problem, const SolverParams& params) {
  if (!problem.objective()) return solve(problem, params).feasible();
  Problem<T> copy = problem;
  copy.maximize(std::vector<T>(problem.num_vars(), T(0)));
  return solve(copy, params).feasible();
}

template <typename T>
bool satisfies(const Problem<T>& problem, const std::vector<T>& x, double tol) {
  if (x.size() != problem.num_vars()) return false;
  auto le = [tol](const T& a, const T& b) {
    if constexpr (detail::ScalarOps<T>::kExact) {
      return a <= b;
    } else {
      return a <= b + tol;
    }
  };
  for (const auto& cons : problem.constraints()) {
    T lhs{};
    for (size_t j = 0; j < x.size(); ++j) lhs += cons.coeffs[j] * x[j];
    switch (cons.rel) {
      case Relation::LessEq:
        if (!le(lhs, cons.rhs)) return false;
        break;
      case Relation::GreaterEq:
        if (!le(cons.rhs, lhs)) return false;
        break;
      case Relation::Equal:
        if (!le(lhs, cons.rhs) || !le(cons.rhs, lhs)) return false;
        break;
    }
  }
  for (size_t j = 0; j < x.size(); ++j) {
    if (problem.lower(j) && !le(*problem.lower(j), x[j])) return false;
    if (problem.upper(j) && !le(x[j], *problem.upper(j))) return false;
  }
  return true;
}

template <typename T>
double max_violation(const Problem<T>& problem, const std::vector<T>& x) {
  if (x.size() != problem.num_vars()) {
    throw std::invalid_argument("solution length does not match variable count");
  }
  T worst{};
  auto shortfall = [&worst](const T& smaller, const T& larger) {
    if (smaller < larger) {
      T gap = larger - smaller;
      if (gap > worst) worst = std::move(gap);
    }
  };
  for (const auto& cons : problem.constraints()) {
    T lhs{};
    for (size_t j = 0; j < x.size(); ++j) lhs += cons.coeffs[j] * x[j];
    switch (cons.rel) {
      case Relation::LessEq:
        shortfall(cons.rhs, lhs);
        break;
      case Relation::GreaterEq:
        shortfall(lhs, cons.rhs);
        break;
      case Relation::Equal:
        shortfall(cons.rhs, lhs);
        shortfall(lhs, cons.rhs);
        break;
    }
  }
  for (size_t j = 0; j < x.size(); ++j) {
    if (problem.lower(j)) shortfall(x[j], *problem.lower(j));
    if (problem.upper(j)) shortfall(*problem.upper(j), x[j]);
  }
  if constexpr (detail::ScalarOps<T>::kExact) {
    return to_double(worst);
  } else {
    return worst;
  }
}

template Outcome<Rational> solve(const Problem<Rational>&, const SolverParams&);
template Outcome<double> solve(const Problem<double>&, const SolverParams&);
template bool feasible(const Problem<Rational>&, const SolverParams&);
template bool feasible(const Problem<double>&, const SolverParams&);
template bool satisfies(const Problem<Rational>&, const std::vector<Rational>&, double);
template bool satisfies(const Problem<double>&, const std::vector<double>&, double);
template double max_violation(const Problem<Rational>&, const std::vector<Rational>&);
template double max_violation(const Problem<double>&, const std::vector<double>&);

}  // namespace geoprob::lp
