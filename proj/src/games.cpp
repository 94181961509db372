#include "geoprob/games.hpp"

#include <cmath>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "geoprob/lp.hpp"
#include "geoprob/types.hpp"
#include "geoprob/parallel.hpp"

namespace geoprob::games {

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

lp::SolverParams game_params(double eps) {
  lp::SolverParams params;
  // The game LPs are feasible and bounded by theorem, so the phase-1 cut
  // and entering threshold sit at eps, and anything the float solver still
  // cannot finish is reported as a degenerate instance (see below).
  params.tolerance = eps;
  params.check_tolerance = 10 * eps;
  return params;
}

// Row player's program: variables p_1..p_m, v; maximize v subject to
// sum_i a_ij p_i >= v for each column j and sum_i p_i = 1.
template <typename T>
lp::Problem<T> row_program(const GameMatrix& a) {
  lp::Problem<T> p(a.rows + 1);
  p.set_free(a.rows);
  for (size_t j = 0; j < a.cols; ++j) {
    std::vector<T> row(a.rows + 1, T(0));
    for (size_t i = 0; i < a.rows; ++i) row[i] = conv<T>(a.at(i, j));
    row[a.rows] = T(-1);
    p.add_constraint(std::move(row), lp::Relation::GreaterEq, T(0));
  }
  std::vector<T> ones(a.rows + 1, T(1));
  ones[a.rows] = T(0);
  p.add_constraint(std::move(ones), lp::Relation::Equal, T(1));
  std::vector<T> objective(a.rows + 1, T(0));
  objective[a.rows] = T(1);
  p.maximize(std::move(objective));
  return p;
}

// Column player's program: variables q_1..q_n, w; minimize w subject to
// sum_j a_ij q_j <= w for each row i and sum_j q_j = 1.
template <typename T>
lp::Problem<T> column_program(const GameMatrix& a) {
  lp::Problem<T> p(a.cols + 1);
  p.set_free(a.cols);
  for (size_t i = 0; i < a.rows; ++i) {
    std::vector<T> row(a.cols + 1, T(0));
    for (size_t j = 0; j < a.cols; ++j) row[j] = conv<T>(a.at(i, j));
    row[a.cols] = T(-1);
    p.add_constraint(std::move(row), lp::Relation::LessEq, T(0));
  }
  std::vector<T> ones(a.cols + 1, T(1));
  ones[a.cols] = T(0);
  p.add_constraint(std::move(ones), lp::Relation::Equal, T(1));
  std::vector<T> objective(a.cols + 1, T(0));
  objective[a.cols] = T(-1);  // maximize -w
  p.maximize(std::move(objective));
  return p;
}

// The minimax LP always has an optimum; a float run that still fails to
// produce one hit a numerically degenerate instance (near-tied pivots) and
// reports nullopt so callers can redraw or switch to rational mode.
template <typename T>
std::optional<T> value_only(const GameMatrix& a, const lp::SolverParams& params) {
  lp::Outcome<T> out;
  try {
    out = lp::solve(row_program<T>(a), params);
  } catch (const DegenerateVerdictError&) {
    if constexpr (std::is_same_v<T, Rational>) throw;
    return std::nullopt;
  }
  if (out.status != lp::Status::Optimal) {
    if constexpr (std::is_same_v<T, Rational>) {
      throw std::logic_error("exact game LP must have an optimum");
    }
    return std::nullopt;
  }
  return out.solution[a.rows];
}

template <typename T>
Solution<T> solve_impl(const GameMatrix& a, const lp::SolverParams& params,
                       double value_match_tol) {
  auto row_out = lp::solve(row_program<T>(a), params);
  auto col_out = lp::solve(column_program<T>(a), params);
  if (row_out.status != lp::Status::Optimal ||
      col_out.status != lp::Status::Optimal) {
    if constexpr (std::is_same_v<T, Rational>) {
      throw std::logic_error("exact game LP must have an optimum");
    }
    throw DegenerateVerdictError(
        "numerically degenerate game in float mode; rerun in rational mode");
  }
  Solution<T> sol;
  sol.value = row_out.solution[a.rows];
  sol.row_strategy.assign(row_out.solution.begin(),
                          row_out.solution.begin() + static_cast<long>(a.rows));
  sol.col_strategy.assign(col_out.solution.begin(),
                          col_out.solution.begin() + static_cast<long>(a.cols));
  const T& col_value = col_out.solution[a.cols];
  if constexpr (std::is_same_v<T, Rational>) {
    if (sol.value != col_value) {
      throw std::logic_error("minimax values of the two game programs differ");
    }
  } else {
    if (std::fabs(sol.value - col_value) > value_match_tol) {
      throw std::logic_error("minimax values of the two game programs differ");
    }
  }
  return sol;
}

}  // namespace

GameMatrix::GameMatrix(size_t m, size_t n, std::vector<double> a)
    : rows(m), cols(n), entries(std::move(a)) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("game matrix needs m, n >= 1");
  if (entries.size() != rows * cols) {
    throw std::invalid_argument("game matrix entry count does not match shape");
  }
}

std::vector<double> GameMatrix::column(size_t j) const {
  std::vector<double> z(rows);
  for (size_t i = 0; i < rows; ++i) z[i] = at(i, j);
  return z;
}

sampler::PointCloud GameMatrix::columns_cloud() const {
  std::vector<std::vector<double>> pts;
  pts.reserve(cols);
  for (size_t j = 0; j < cols; ++j) pts.push_back(column(j));
  return sampler::PointCloud(static_cast<int>(rows), std::move(pts));
}

GameMatrix GameMatrix::from_csv(std::istream& in) {
  std::vector<double> entries;
  size_t cols = 0, rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::stringstream fields(line);
    std::string field;
    size_t this_cols = 0;
    while (std::getline(fields, field, ',')) {
      size_t used = 0;
      double v = std::stod(field, &used);
      entries.push_back(v);
      ++this_cols;
    }
    if (rows == 0) {
      cols = this_cols;
    } else if (this_cols != cols) {
      throw std::invalid_argument("ragged CSV matrix row");
    }
    ++rows;
  }
  if (rows == 0) throw std::invalid_argument("empty CSV matrix");
  return GameMatrix(rows, cols, std::move(entries));
}

GameMatrix GameMatrix::from_csv_string(const std::string& text) {
  std::stringstream in(text);
  return from_csv(in);
}

ExactSolution solve_game_exact(const GameMatrix& a) {
  return solve_impl<Rational>(a, {}, 0.0);
}

FloatSolution solve_game_float(const GameMatrix& a, double eps) {
  return solve_impl<double>(a, game_params(eps), 10 * eps);
}

Rational game_value_exact(const GameMatrix& a) {
  return *value_only<Rational>(a, {});
}

double game_value_float(const GameMatrix& a, double eps) {
  const auto v = value_only<double>(a, game_params(eps));
  if (!v) {
    throw DegenerateVerdictError(
        "numerically degenerate game in float mode; rerun in rational mode");
  }
  return *v;
}

Verdict row_player_favored(const GameMatrix& a, const ArithmeticMode& mode) {
  if (mode.is_rational()) {
    return verdict_of(game_value_exact(a) > 0);
  }
  const auto v = value_only<double>(a, game_params(mode.epsilon));
  if (!v) return Verdict::Degenerate;
  if (*v > mode.epsilon) return Verdict::True;
  if (*v < -mode.epsilon) return Verdict::False;
  return Verdict::Degenerate;
}

GameMatrix apply_sign_flips(const GameMatrix& a, const SignFlip& flip) {
  if (flip.row_signs.size() != a.rows || flip.col_signs.size() != a.cols) {
    throw std::invalid_argument("sign flip dimensions do not match the matrix");
  }
  for (auto s : flip.row_signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("row signs must be +/-1");
  }
  for (auto s : flip.col_signs) {
    if (s != 1 && s != -1) throw std::invalid_argument("column signs must be +/-1");
  }
  GameMatrix out = a;
  for (size_t i = 0; i < a.rows; ++i) {
    for (size_t j = 0; j < a.cols; ++j) {
      out.at(i, j) = flip.row_signs[i] * a.at(i, j) * flip.col_signs[j];
    }
  }
  return out;
}

SignFlip witness_signs(const GameMatrix& a, const std::vector<double>& x) {
  if (x.size() != a.rows) {
    throw std::invalid_argument("witness vector length does not match row count");
  }
  SignFlip flip;
  flip.row_signs.reserve(a.rows);
  for (double xi : x) {
    if (xi == 0.0) throw std::invalid_argument("witness vector has a zero coordinate");
    flip.row_signs.push_back(xi > 0 ? 1 : -1);
  }
  flip.col_signs.reserve(a.cols);
  for (size_t j = 0; j < a.cols; ++j) {
    // Exact accumulation so the sign is right even for near-orthogonal x.
    Rational ip = 0;
    for (size_t i = 0; i < a.rows; ++i) {
      ip += to_rational(x[i]) * to_rational(a.at(i, j));
    }
    if (ip == 0) {
      throw std::invalid_argument("witness vector is orthogonal to a column");
    }
    flip.col_signs.push_back(ip > 0 ? 1 : -1);
  }
  return flip;
}

std::uint64_t favorable_flip_count(const GameMatrix& a, const ArithmeticMode& mode,
                                   unsigned threads) {
  const size_t bits = a.rows + a.cols;
  if (bits > 16) {
    throw std::invalid_argument("favorable_flip_count needs m + n <= 16");
  }
  const std::uint64_t total = std::uint64_t{1} << bits;
  std::vector<std::uint8_t> favored(total, 0);
  parallel_for(total, threads, [&](size_t mask) {
    SignFlip flip;
    flip.row_signs.resize(a.rows);
    flip.col_signs.resize(a.cols);
    for (size_t i = 0; i < a.rows; ++i) {
      flip.row_signs[i] = (mask >> i) & 1 ? std::int8_t{-1} : std::int8_t{1};
    }
    for (size_t j = 0; j < a.cols; ++j) {
      flip.col_signs[j] = (mask >> (a.rows + j)) & 1 ? std::int8_t{-1} : std::int8_t{1};
    }
    Verdict v = row_player_favored(apply_sign_flips(a, flip), mode);
    if (v == Verdict::Degenerate) {
      throw DegenerateVerdictError(
          "degenerate game value under sign flips; rerun in rational mode");
    }
    favored[mask] = v == Verdict::True ? 1 : 0;
  });
  std::uint64_t count = 0;
  for (auto f : favored) count += f;
  return count;
}

}  // namespace geoprob::games
