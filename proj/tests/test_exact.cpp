#include "doctest.h"

#include <boost/multiprecision/gmp.hpp>

#include "geoprob/exact.hpp"

using namespace geoprob;
using exact::Scenario;

TEST_SUITE_BEGIN("exact");

TEST_CASE("binomial coefficients") {
  CHECK(exact::binom(4, 2) == 6);
  CHECK(exact::binom(5, 0) == 1);
  CHECK(exact::binom(3, 5) == 0);
  CHECK(exact::binom(3, -1) == 0);
  CHECK(exact::binom(0, 0) == 1);
  // Large values stay exact.
  CHECK(exact::binom(64, 32) == BigInt("1832624140942590534"));
  CHECK_THROWS_AS(exact::binom(-1, 0), std::invalid_argument);
}

TEST_CASE("binomial Pascal property") {
  for (int n = 1; n <= 25; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(exact::binom(n, k) == exact::binom(n - 1, k - 1) + exact::binom(n - 1, k));
    }
  }
}

TEST_CASE("region counts from the closed formula") {
  CHECK(exact::regions(5, 2) == 10);
  CHECK(exact::regions(3, 3) == 8);
  CHECK(exact::regions(4, 3) == 14);
  CHECK(exact::regions(1, 1) == 2);
  CHECK_THROWS_AS(exact::regions(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(exact::regions(1, 0), std::invalid_argument);
}

TEST_CASE("region counts from the recurrence") {
  CHECK(exact::regions_by_recurrence(4, 3) == 14);
  CHECK(exact::regions_by_recurrence(2, 5) == 4);
  CHECK(exact::regions_by_recurrence(6, 2) == 12);
  CHECK_THROWS_AS(exact::regions_by_recurrence(0, 1), std::invalid_argument);

  for (int n = 1; n <= 16; ++n) {
    for (int d = 1; d <= 16; ++d) {
      CAPTURE(n);
      CAPTURE(d);
      CHECK(exact::regions(n, d) == exact::regions_by_recurrence(n, d));
    }
  }
}

TEST_CASE("p(n,d) values") {
  CHECK(exact::p_exact(8, 2) == ExactProbability(Rational(1, 16)));
  CHECK(exact::p_exact(4, 3) == ExactProbability(Rational(7, 8)));
  CHECK(exact::p_exact(3, 2) == ExactProbability(Rational(3, 4)));
  CHECK(exact::p_exact(10, 5) == ExactProbability(Rational(1, 2)));
  CHECK(exact::p_exact(5, -1) == ExactProbability::zero());
  CHECK(exact::p_exact(5, 0) == ExactProbability::zero());
  CHECK(exact::p_exact(3, 7) == ExactProbability::one());
  CHECK(exact::p_exact(13, 3) == ExactProbability(Rational(79, 4096)));
  CHECK_THROWS_AS(exact::p_exact(0, 1), std::invalid_argument);
}

TEST_CASE("p(n,d) is stored reduced") {
  for (int n = 1; n <= 24; ++n) {
    for (int d = 1; d < n; ++d) {
      const ExactProbability p = exact::p_exact(n, d);
      CHECK(boost::multiprecision::gcd(p.numerator(), p.denominator()) == 1);
    }
  }
}

TEST_CASE("complementarity identity over the full integer range of d") {
  for (int n = 1; n <= 24; ++n) {
    for (int d = -4; d <= n + 4; ++d) {
      CAPTURE(n);
      CAPTURE(d);
      CHECK(exact::p_exact(n, d).value() + exact::p_exact(n, n - d).value() == 1);
    }
  }
}

TEST_CASE("monotonicity in d") {
  for (int n = 1; n <= 20; ++n) {
    for (int d = 0; d <= n; ++d) {
      CHECK(exact::p_exact(n, d) <= exact::p_exact(n, d + 1));
    }
  }
}

TEST_CASE("low-dimension specializations") {
  for (int n = 1; n <= 20; ++n) {
    const Rational half_pow(1, BigInt(1) << (n - 1));
    CHECK(exact::p_exact(n, 1).value() == half_pow);
    CHECK(exact::p_exact(n, 2).value() == Rational(n) * half_pow);
    CHECK(exact::p_exact(n + 1, n).value() == 1 - Rational(1, BigInt(1) << n));
  }
}

TEST_CASE("scenario reductions") {
  CHECK(exact::scenario_probability(Scenario::bocce(8, 2)) ==
        ExactProbability(Rational(1, 16)));
  CHECK(exact::scenario_probability(Scenario::bocce_fixed_first(8, 2)) ==
        ExactProbability(Rational(1, 16)));
  CHECK(exact::scenario_probability(Scenario::inhomogeneous_positive(1, 2)) ==
        ExactProbability(Rational(3, 4)));
  CHECK(exact::scenario_probability(Scenario::game_row_favor(1, 3)) ==
        ExactProbability(Rational(1, 8)));
  CHECK(exact::scenario_probability(Scenario::positive_io(1, 3)) ==
        ExactProbability(Rational(7, 8)));
  CHECK(exact::scenario_probability(Scenario::homogeneous_positive(1, 2)) ==
        ExactProbability(Rational(1, 2)));
  CHECK(exact::scenario_probability(Scenario::subspace_positive(10, 5)) ==
        ExactProbability(Rational(1, 2)));
  // Cover's reduction with n = 2m: p(m+n, m).
  CHECK(exact::scenario_probability(Scenario::game_row_favor(2, 4)) ==
        exact::p_exact(6, 2));
}

TEST_CASE("scenario invariants") {
  CHECK_THROWS_AS(Scenario::bocce(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(Scenario::bocce(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(Scenario::homogeneous_positive(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(Scenario::inhomogeneous_positive(3, 2), std::invalid_argument);
  CHECK_NOTHROW(Scenario::subspace_positive(2, 2));
}

TEST_CASE("scenario names and parsing") {
  const Scenario s = Scenario::make("bocce", 8, 2, std::nullopt);
  CHECK(s == Scenario::bocce(8, 2));
  CHECK(s.name() == "bocce");
  CHECK(s.dims_string() == "n=8,d=2");
  CHECK(Scenario::make("game-row-favor", 4, std::nullopt, 2) ==
        Scenario::game_row_favor(2, 4));
  CHECK_THROWS_AS(Scenario::make("bocce", std::nullopt, 2, std::nullopt),
                  std::invalid_argument);
  CHECK_THROWS_AS(Scenario::make("nope", 1, 1, 1), std::invalid_argument);
}

TEST_CASE("step distribution") {
  const auto dist4 = exact::step_distribution(4);
  REQUIRE(dist4.size() == 4);
  CHECK(dist4[0] == ExactProbability(Rational(1, 8)));
  CHECK(dist4[1] == ExactProbability(Rational(3, 8)));
  CHECK(dist4[2] == ExactProbability(Rational(3, 8)));
  CHECK(dist4[3] == ExactProbability(Rational(1, 8)));

  const auto dist1 = exact::step_distribution(1);
  REQUIRE(dist1.size() == 1);
  CHECK(dist1[0] == ExactProbability::one());

  Rational sum = 0;
  for (const auto& p : exact::step_distribution(9)) {
    CHECK(p.value() >= 0);
    sum += p.value();
  }
  CHECK(sum == 1);
}

TEST_CASE("step distribution matches p(n,m) increments") {
  for (int n = 2; n <= 12; ++n) {
    const auto dist = exact::step_distribution(n);
    for (int m = 1; m <= n; ++m) {
      CHECK(dist[static_cast<std::size_t>(m - 1)].value() ==
            exact::p_exact(n, m).value() - exact::p_exact(n, m - 1).value());
    }
  }
}

TEST_SUITE_END();
