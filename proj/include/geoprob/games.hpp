#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "geoprob/cloud.hpp"
#include "geoprob/types.hpp"

namespace geoprob::games {

/// Payoff matrix of a two-person zero-sum game: the column player pays the
/// row player entry (i, j) when row i meets column j.
struct GameMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;  // row-major

  GameMatrix() = default;
  GameMatrix(std::size_t m, std::size_t n, std::vector<double> a);

  double at(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }

  /// Column j as a vector in R^m.
  std::vector<double> column(std::size_t j) const;

  /// Columns as a point cloud in R^m (requires no zero column).
  sampler::PointCloud columns_cloud() const;

  /// One matrix row per CSV line, comma-separated decimals.
  static GameMatrix from_csv(std::istream& in);
  static GameMatrix from_csv_string(const std::string& text);
};

/// Value and optimal mixed strategies. Row strategy p* guarantees
/// min_j (p*^T A)_j = value; column strategy q* guarantees
/// max_i (A q*)_i = value.
template <typename T>
struct Solution {
  T value{};
  std::vector<T> row_strategy;
  std::vector<T> col_strategy;
};

using FloatSolution = Solution<double>;
using ExactSolution = Solution<Rational>;

/// Solves the standard minimax LP (maximize v s.t. A^T p >= v 1, sum p = 1,
/// p >= 0, v free); the column strategy comes from the column player's own
/// program and the two optimal values are checked to coincide.
ExactSolution solve_game_exact(const GameMatrix& a);
FloatSolution solve_game_float(const GameMatrix& a,
                               double eps = ArithmeticMode::kDefaultEpsilon);

/// Exact game value in rational mode (single LP; strategies not recovered).
Rational game_value_exact(const GameMatrix& a);
double game_value_float(const GameMatrix& a,
                        double eps = ArithmeticMode::kDefaultEpsilon);

/// Does the game favor the row player (value > 0)? Float mode reports
/// Degenerate when |value| <= epsilon.
Verdict row_player_favored(const GameMatrix& a, const ArithmeticMode& mode);

/// Row/column reflection pattern: entry (i, j) maps to c_i * a_ij * d_j.
struct SignFlip {
  std::vector<std::int8_t> row_signs;  // +1 / -1
  std::vector<std::int8_t> col_signs;
};

GameMatrix apply_sign_flips(const GameMatrix& a, const SignFlip& flip);

/// The reflection pattern induced by a vector x with nonzero coordinates
/// and nonzero inner products against all columns: c_i = sign(x_i),
/// d_j = sign(<x, z_j>). The flipped game always favors the row player.
SignFlip witness_signs(const GameMatrix& a, const std::vector<double>& x);

/// Number of the 2^(m+n) sign flips whose flipped game has positive value.
/// For generic matrices this equals r(m+n, m). Float mode aborts on any
/// degenerate (near-zero value) flip; rational mode never does.
std::uint64_t favorable_flip_count(const GameMatrix& a, const ArithmeticMode& mode,
                                   unsigned threads = 0);

}  // namespace geoprob::games
