#include "doctest.h"

#include <cmath>
#include <vector>

#include "geoprob/exact.hpp"
#include "geoprob/games.hpp"
#include "geoprob/geometry.hpp"
#include "geoprob/lp.hpp"
#include "geoprob/sampler.hpp"

using namespace geoprob;
using games::GameMatrix;
using games::SignFlip;
using sampler::TrialRng;

namespace {

const ArithmeticMode kRational = ArithmeticMode::rational();
const ArithmeticMode kFloat = ArithmeticMode::floating();

GameMatrix random_game(std::size_t m, std::size_t n, TrialRng& rng) {
  std::vector<double> entries(m * n);
  for (auto& e : entries) e = rng.normal();
  return GameMatrix(m, n, std::move(entries));
}

// min over columns of p^T A, exact.
Rational worst_column(const GameMatrix& a, const std::vector<Rational>& p) {
  Rational best;
  for (std::size_t j = 0; j < a.cols; ++j) {
    Rational v = 0;
    for (std::size_t i = 0; i < a.rows; ++i) v += p[i] * to_rational(a.at(i, j));
    if (j == 0 || v < best) best = v;
  }
  return best;
}

Rational best_row(const GameMatrix& a, const std::vector<Rational>& q) {
  Rational best;
  for (std::size_t i = 0; i < a.rows; ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j < a.cols; ++j) v += to_rational(a.at(i, j)) * q[j];
    if (i == 0 || v > best) best = v;
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("games");

TEST_CASE("trivial and anchored game values") {
  CHECK(games::game_value_exact(GameMatrix(1, 1, {1.0})) == 1);
  CHECK(games::game_value_exact(GameMatrix(1, 3, {1.0, 2.0, 3.0})) == 1);

  const GameMatrix pennies(2, 2, {1, -1, -1, 1});
  const auto sol = games::solve_game_exact(pennies);
  CHECK(sol.value == 0);
  CHECK(sol.row_strategy == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(sol.col_strategy == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

  // 2x2 with a mixed optimum: value (ad - bc) / (a + d - b - c) = 1/5.
  const GameMatrix mixed(2, 2, {2, -1, -1, 1});
  CHECK(games::game_value_exact(mixed) == Rational(1, 5));
}

TEST_CASE("strategies form a certificate") {
  TrialRng rng(606, 0);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep) % 4;
    const std::size_t n = 1 + (static_cast<std::size_t>(rep) / 4) % 4;
    const GameMatrix a = random_game(m, n, rng);
    const auto sol = games::solve_game_exact(a);

    Rational p_sum = 0, q_sum = 0;
    for (const auto& p : sol.row_strategy) {
      CHECK(p >= 0);
      p_sum += p;
    }
    for (const auto& q : sol.col_strategy) {
      CHECK(q >= 0);
      q_sum += q;
    }
    CHECK(p_sum == 1);
    CHECK(q_sum == 1);
    CHECK(worst_column(a, sol.row_strategy) == sol.value);
    CHECK(best_row(a, sol.col_strategy) == sol.value);
  }
}

TEST_CASE("any mixed strategy gives an LP-free lower bound on the value") {
  TrialRng rng(607, 0);
  for (int rep = 0; rep < 40; ++rep) {
    const GameMatrix a = random_game(3, 4, rng);
    const Rational value = games::game_value_exact(a);
    // Random probability vector with small rational entries.
    std::vector<Rational> p(3);
    std::uint64_t parts[3];
    std::uint64_t total = 0;
    for (auto& x : parts) {
      x = 1 + rng.next_u64() % 9;
      total += x;
    }
    for (int i = 0; i < 3; ++i) p[i] = Rational(parts[i], total);
    CHECK(worst_column(a, p) <= value);
  }
}

TEST_CASE("row_player_favored verdicts") {
  CHECK(games::row_player_favored(GameMatrix(1, 1, {1.0}), kRational) ==
        Verdict::True);
  CHECK(games::row_player_favored(GameMatrix(1, 2, {-1.0, -2.0}), kRational) ==
        Verdict::False);
  // Value exactly zero: rational mode is decisive, float mode degenerate.
  const GameMatrix pennies(2, 2, {1, -1, -1, 1});
  CHECK(games::row_player_favored(pennies, kRational) == Verdict::False);
  CHECK(games::row_player_favored(pennies, kFloat) == Verdict::Degenerate);
}

TEST_CASE("favored iff a positive vector beats every column") {
  // The reduction behind the game scenario: value > 0 iff some positive
  // mixed strategy has positive payoff against every column, checked here
  // via a direct LP independent of the game solver.
  TrialRng rng(608, 0);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep) % 4;
    const std::size_t n = 1 + (static_cast<std::size_t>(rep) / 4) % 4;
    const GameMatrix a = random_game(m, n, rng);

    lp::RationalProblem p(m + 1);  // x >= 0, margin free
    p.set_free(m);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> row(m + 1, Rational(0));
      for (std::size_t i = 0; i < m; ++i) row[i] = to_rational(a.at(i, j));
      row[m] = -1;
      p.add_constraint(std::move(row), lp::Relation::GreaterEq, Rational(0));
    }
    std::vector<Rational> ones(m + 1, Rational(1));
    ones[m] = 0;
    p.add_constraint(std::move(ones), lp::Relation::Equal, Rational(1));
    std::vector<Rational> obj(m + 1, Rational(0));
    obj[m] = 1;
    p.maximize(std::move(obj));
    const auto out = lp::solve(p);
    REQUIRE(out.status == lp::Status::Optimal);
    const bool positive_vector_beats_all = out.objective > 0;

    CHECK(positive_vector_beats_all ==
          verdict_bool(games::row_player_favored(a, kRational)));
  }
}

TEST_CASE("non-degenerate float favoredness agrees with rational") {
  TrialRng rng(614, 0);
  int committed = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep) % 4;
    const std::size_t n = 1 + (static_cast<std::size_t>(rep) / 4) % 5;
    const GameMatrix a = random_game(m, n, rng);
    const Verdict fast = games::row_player_favored(a, kFloat);
    if (fast == Verdict::Degenerate) continue;
    CHECK(fast == games::row_player_favored(a, kRational));
    ++committed;
  }
  CHECK(committed > 190);
}

TEST_CASE("sign flips") {
  const GameMatrix a(2, 2, {1, 2, 3, 4});
  const SignFlip identity{{1, 1}, {1, 1}};
  CHECK(games::apply_sign_flips(a, identity).entries == a.entries);

  const GameMatrix single(1, 1, {5.0});
  const SignFlip both{{-1}, {-1}};
  CHECK(games::apply_sign_flips(single, both).entries == std::vector<double>{5.0});

  const SignFlip row_neg{{1, -1}, {1, 1}};
  CHECK(games::apply_sign_flips(a, row_neg).entries ==
        std::vector<double>{1, 2, -3, -4});

  SignFlip bad{{1, 1}, {1}};
  CHECK_THROWS_AS(games::apply_sign_flips(a, bad), std::invalid_argument);
  SignFlip zero{{1, 0}, {1, 1}};
  CHECK_THROWS_AS(games::apply_sign_flips(a, zero), std::invalid_argument);
}

TEST_CASE("sign flips are involutive") {
  TrialRng rng(609, 0);
  for (int rep = 0; rep < 20; ++rep) {
    const GameMatrix a = random_game(3, 3, rng);
    SignFlip flip;
    for (int i = 0; i < 3; ++i) {
      flip.row_signs.push_back(rng.next_u64() % 2 ? 1 : -1);
      flip.col_signs.push_back(rng.next_u64() % 2 ? 1 : -1);
    }
    const GameMatrix twice =
        games::apply_sign_flips(games::apply_sign_flips(a, flip), flip);
    CHECK(twice.entries == a.entries);
  }
}

TEST_CASE("witness signs produce a row-favorable flip") {
  const GameMatrix neg(1, 1, {-1.0});
  const SignFlip w = games::witness_signs(neg, {1.0});
  CHECK(w.row_signs == std::vector<std::int8_t>{1});
  CHECK(w.col_signs == std::vector<std::int8_t>{-1});
  CHECK(games::game_value_exact(games::apply_sign_flips(neg, w)) == 1);

  const GameMatrix row(1, 2, {1.0, -1.0});
  const SignFlip w2 = games::witness_signs(row, {1.0});
  CHECK(w2.col_signs == std::vector<std::int8_t>{1, -1});
  CHECK(games::game_value_exact(games::apply_sign_flips(row, w2)) == 1);

  CHECK_THROWS_AS(games::witness_signs(row, {0.0}), std::invalid_argument);
  // x orthogonal to a column.
  const GameMatrix ortho(2, 1, {1.0, -1.0});
  CHECK_THROWS_AS(games::witness_signs(ortho, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("witness contract on random matrices and vectors") {
  TrialRng rng(610, 0);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t m = 1 + static_cast<std::size_t>(rep) % 3;
    const std::size_t n = 1 + (static_cast<std::size_t>(rep) / 3) % 4;
    const GameMatrix a = random_game(m, n, rng);
    const auto x = sampler::sample_normal_vector(static_cast<int>(m), rng);
    const SignFlip w = games::witness_signs(a, x);
    CHECK(games::row_player_favored(games::apply_sign_flips(a, w), kRational) ==
          Verdict::True);
  }
}

TEST_CASE("favorable flip counts on anchored shapes") {
  TrialRng rng(611, 0);
  // 1x1: value c*a*d flips positive for exactly 2 of the 4 flips.
  const GameMatrix single(1, 1, {0.7});
  CHECK(games::favorable_flip_count(single, kRational) == 2);
  CHECK(BigInt(2) == exact::regions(2, 1));

  const GameMatrix g22 = random_game(2, 2, rng);
  CHECK(games::favorable_flip_count(g22, kRational) == 8);

  const GameMatrix g23 = random_game(2, 3, rng);
  CHECK(games::favorable_flip_count(g23, kRational) == 10);
  CHECK(BigInt(10) == exact::regions(5, 2));
}

TEST_CASE("flip count guards") {
  const GameMatrix big(3, 14, std::vector<double>(42, 1.0));
  CHECK_THROWS_AS(games::favorable_flip_count(big, kRational),
                  std::invalid_argument);

  // Value lands exactly on zero for some flips: float mode must abort
  // rather than guess, rational mode reports the (non-generic) count.
  const GameMatrix pennies(2, 2, {1, -1, -1, 1});
  CHECK_THROWS_AS(games::favorable_flip_count(pennies, kFloat),
                  DegenerateVerdictError);
  // Zero-value flips drop the count below r(4,2) = 8: only the six flips
  // that create a dominant all-positive row are favored.
  CHECK(games::favorable_flip_count(pennies, kRational) == 6);
}

TEST_CASE("distributional flip invariance") {
  // E(W_{C,D}) does not depend on the fixed flip (C, D): the favored rate
  // over an ensemble matches the rate of the flipped ensemble within 4
  // sigma. Correlation between the two rates only shrinks the bound used.
  const SignFlip fixed{{1, -1}, {-1, 1, -1}};
  const int trials = 10000;
  int favored_plain = 0, favored_flipped = 0;
  for (int k = 0; k < trials; ++k) {
    TrialRng rng(613, static_cast<std::uint64_t>(k));
    const GameMatrix a = random_game(2, 3, rng);
    const Verdict plain = games::row_player_favored(a, kFloat);
    const Verdict flipped =
        games::row_player_favored(games::apply_sign_flips(a, fixed), kFloat);
    if (plain == Verdict::True) ++favored_plain;
    if (flipped == Verdict::True) ++favored_flipped;
  }
  const double p = exact::p_exact(5, 2).to_double();
  const double sigma = 2.0 * std::sqrt(p * (1 - p) / trials);
  CHECK(std::fabs(favored_plain - favored_flipped) / trials < 4.0 * sigma);
}

TEST_CASE("CSV parsing") {
  const GameMatrix a = GameMatrix::from_csv_string("1,2.5,-3\n4,5,6\n");
  CHECK(a.rows == 2);
  CHECK(a.cols == 3);
  CHECK(a.at(0, 1) == 2.5);
  CHECK(a.at(1, 2) == 6.0);
  CHECK_THROWS_AS(GameMatrix::from_csv_string("1,2\n3\n"), std::invalid_argument);
  CHECK_THROWS_AS(GameMatrix::from_csv_string(""), std::invalid_argument);
}

TEST_SUITE_END();
