#include "geoprob/types.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace geoprob {

Rational to_rational(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("cannot convert non-finite double to rational");
  }
  // mpq construction from double is exact.
  return Rational(x);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string fraction_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Degenerate: return "degenerate";
  }
  return "?";
}

bool verdict_bool(Verdict v) {
  if (v == Verdict::Degenerate) {
    throw DegenerateVerdictError("degenerate verdict where a boolean was required");
  }
  return v == Verdict::True;
}

std::string ArithmeticMode::str() const {
  if (is_rational()) return "rational";
  return "float:" + format_double(epsilon);
}

ArithmeticMode ArithmeticMode::parse(const std::string& s) {
  if (s == "rational" || s == "exact") return rational();
  if (s == "float") return floating();
  if (s.rfind("float:", 0) == 0) {
    return floating(std::stod(s.substr(6)));
  }
  throw std::invalid_argument("unknown arithmetic mode: " + s);
}

ExactProbability::ExactProbability(Rational v) : value_(std::move(v)) {
  if (value_ < 0 || value_ > 1) {
    throw std::invalid_argument("probability outside [0, 1]: " +
                                fraction_string(value_));
  }
}

ExactProbability::ExactProbability(BigInt numerator, BigInt denominator)
    : ExactProbability(Rational(std::move(numerator), std::move(denominator))) {}

}  // namespace geoprob
