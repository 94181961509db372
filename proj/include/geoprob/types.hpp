#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace geoprob {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Exact conversion; every finite double is a dyadic rational.
Rational to_rational(double x);

double to_double(const Rational& q);

/// "num/den" with the canonical (reduced, positive-denominator) form.
std::string fraction_string(const Rational& q);

/// Shortest round-trip decimal form, locale independent.
std::string format_double(double x);

/// Outcome of a geometric predicate. Rational-mode evaluations are exact and
/// never degenerate; float-mode evaluations report Degenerate when the
/// decision margin is too close to the boundary to trust.
enum class Verdict { True, False, Degenerate };

const char* verdict_name(Verdict v);

/// Raised when a caller needs a boolean but the evaluation was degenerate.
class DegenerateVerdictError : public std::runtime_error {
 public:
  explicit DegenerateVerdictError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Converts to bool, throwing DegenerateVerdictError on Degenerate.
bool verdict_bool(Verdict v);

inline Verdict verdict_of(bool b) { return b ? Verdict::True : Verdict::False; }

/// Arithmetic regime for the LP-backed oracles. Rational computes exact
/// feasibility certificates; Float trades exactness for throughput and
/// classifies margins against epsilon.
struct ArithmeticMode {
  enum class Kind { Rational, Float };

  static constexpr double kDefaultEpsilon = 1e-9;

  Kind kind = Kind::Float;
  double epsilon = kDefaultEpsilon;

  static ArithmeticMode rational() { return {Kind::Rational, 0.0}; }
  static ArithmeticMode floating(double eps = kDefaultEpsilon) {
    if (!(eps > 0)) throw std::invalid_argument("epsilon must be positive");
    return {Kind::Float, eps};
  }

  bool is_rational() const { return kind == Kind::Rational; }

  /// Margins at or below this are treated as exact zeros (roundoff); margins
  /// between zero_band() and epsilon are too close to call and degenerate.
  double zero_band() const { return epsilon * 1e-3; }

  std::string str() const;
  static ArithmeticMode parse(const std::string& s);
};

/// A probability as a reduced rational in [0, 1].
class ExactProbability {
 public:
  ExactProbability() : value_(0) {}
  explicit ExactProbability(Rational v);
  ExactProbability(BigInt numerator, BigInt denominator);

  static ExactProbability zero() { return ExactProbability(); }
  static ExactProbability one() { return ExactProbability(Rational(1)); }

  const Rational& value() const { return value_; }
  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const {
    return boost::multiprecision::denominator(value_);
  }

  double to_double() const { return geoprob::to_double(value_); }
  std::string str() const { return fraction_string(value_); }

  friend bool operator==(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ != b.value_;
  }
  friend bool operator<(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExactProbability& a, const ExactProbability& b) {
    return a.value_ <= b.value_;
  }

 private:
  Rational value_;
};

}  // namespace geoprob
