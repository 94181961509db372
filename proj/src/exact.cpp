#include "geoprob/exact.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace geoprob::exact {

BigInt binom(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("binom: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;  // exact: result is C(n-k+i, i) after this step
  }
  return result;
}

BigInt regions(std::int64_t n, std::int64_t d) {
  if (n < 1 || d < 1) throw std::invalid_argument("regions: need n >= 1 and d >= 1");
  BigInt sum = 0;
  for (std::int64_t j = 0; j < d; ++j) sum += binom(n - 1, j);
  return 2 * sum;
}

namespace {

BigInt regions_recurse(std::int64_t n, std::int64_t d,
                       std::map<std::pair<std::int64_t, std::int64_t>, BigInt>& memo) {
  if (d <= 0) return 0;  // no regions left once the dimension is exhausted
  if (n <= d) return BigInt(1) << n;
  if (d == 2) return BigInt(2 * n);
  auto key = std::make_pair(n, d);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  BigInt value = regions_recurse(n - 1, d, memo) + regions_recurse(n - 1, d - 1, memo);
  memo.emplace(key, value);
  return value;
}

}  // namespace

BigInt regions_by_recurrence(std::int64_t n, std::int64_t d) {
  if (n < 1 || d < 1) {
    throw std::invalid_argument("regions_by_recurrence: need n >= 1 and d >= 1");
  }
  static std::map<std::pair<std::int64_t, std::int64_t>, BigInt> memo;
  static std::mutex memo_mutex;
  std::lock_guard<std::mutex> lock(memo_mutex);
  return regions_recurse(n, d, memo);
}

ExactProbability p_exact(std::int64_t n, std::int64_t d) {
  if (n < 1) throw std::invalid_argument("p_exact: n must be positive");
  if (d <= 0) return ExactProbability::zero();
  if (d >= n) return ExactProbability::one();
  return ExactProbability(Rational(regions(n, d), BigInt(1) << n));
}

Scenario::Scenario(ScenarioKind kind, int first, int second)
    : kind_(kind), first_(first), second_(second) {
  if (first_ < 1 || second_ < 1) {
    throw std::invalid_argument("scenario dimensions must be >= 1");
  }
}

Scenario Scenario::bocce(int n, int d) { return {ScenarioKind::Bocce, n, d}; }

Scenario Scenario::bocce_fixed_first(int n, int d) {
  return {ScenarioKind::BocceFixedFirst, n, d};
}

Scenario Scenario::homogeneous_positive(int m, int n) {
  Scenario s{ScenarioKind::HomogeneousPositive, m, n};
  if (!(n > m)) {
    throw std::invalid_argument("homogeneous-positive requires n > m");
  }
  return s;
}

Scenario Scenario::inhomogeneous_positive(int m, int n) {
  Scenario s{ScenarioKind::InhomogeneousPositive, m, n};
  if (!(n > m)) {
    throw std::invalid_argument("inhomogeneous-positive requires n > m");
  }
  return s;
}

Scenario Scenario::subspace_positive(int n, int m) {
  return {ScenarioKind::SubspacePositive, n, m};
}

Scenario Scenario::game_row_favor(int m, int n) {
  return {ScenarioKind::GameRowFavor, m, n};
}

Scenario Scenario::positive_io(int m, int n) {
  return {ScenarioKind::PositiveIO, m, n};
}

bool Scenario::has_nd() const {
  return kind_ == ScenarioKind::Bocce || kind_ == ScenarioKind::BocceFixedFirst;
}

int Scenario::n() const {
  switch (kind_) {
    case ScenarioKind::Bocce:
    case ScenarioKind::BocceFixedFirst:
    case ScenarioKind::SubspacePositive:
      return first_;
    default:
      return second_;
  }
}

int Scenario::d() const {
  if (!has_nd()) throw std::logic_error("scenario has no d dimension");
  return second_;
}

int Scenario::m() const {
  switch (kind_) {
    case ScenarioKind::Bocce:
    case ScenarioKind::BocceFixedFirst:
      throw std::logic_error("scenario has no m dimension");
    case ScenarioKind::SubspacePositive:
      return second_;
    default:
      return first_;
  }
}

std::string Scenario::name() const {
  switch (kind_) {
    case ScenarioKind::Bocce: return "bocce";
    case ScenarioKind::BocceFixedFirst: return "bocce-fixed-first";
    case ScenarioKind::HomogeneousPositive: return "homogeneous-positive";
    case ScenarioKind::InhomogeneousPositive: return "inhomogeneous-positive";
    case ScenarioKind::SubspacePositive: return "subspace-positive";
    case ScenarioKind::GameRowFavor: return "game-row-favor";
    case ScenarioKind::PositiveIO: return "positive-io";
  }
  return "?";
}

std::vector<std::pair<std::string, int>> Scenario::dims() const {
  switch (kind_) {
    case ScenarioKind::Bocce:
    case ScenarioKind::BocceFixedFirst:
      return {{"n", first_}, {"d", second_}};
    case ScenarioKind::SubspacePositive:
      return {{"n", first_}, {"m", second_}};
    default:
      return {{"m", first_}, {"n", second_}};
  }
}

std::string Scenario::dims_string() const {
  std::ostringstream out;
  bool sep = false;
  for (const auto& [key, value] : dims()) {
    if (sep) out << ",";
    out << key << "=" << value;
    sep = true;
  }
  return out.str();
}

Scenario Scenario::make(const std::string& name, std::optional<int> n,
                        std::optional<int> d, std::optional<int> m) {
  auto need = [&](const std::optional<int>& v, const char* flag) {
    if (!v) {
      throw std::invalid_argument("scenario '" + name + "' requires --" + flag);
    }
    return *v;
  };
  if (name == "bocce") return bocce(need(n, "n"), need(d, "d"));
  if (name == "bocce-fixed-first") return bocce_fixed_first(need(n, "n"), need(d, "d"));
  if (name == "homogeneous-positive") return homogeneous_positive(need(m, "m"), need(n, "n"));
  if (name == "inhomogeneous-positive") return inhomogeneous_positive(need(m, "m"), need(n, "n"));
  if (name == "subspace-positive") return subspace_positive(need(n, "n"), need(m, "m"));
  if (name == "game-row-favor") return game_row_favor(need(m, "m"), need(n, "n"));
  if (name == "positive-io") return positive_io(need(m, "m"), need(n, "n"));
  throw std::invalid_argument("unknown scenario: " + name);
}

ExactProbability scenario_probability(const Scenario& s) {
  switch (s.kind()) {
    case ScenarioKind::Bocce:
    case ScenarioKind::BocceFixedFirst:
      return p_exact(s.n(), s.d());
    case ScenarioKind::HomogeneousPositive:
      return p_exact(s.n(), s.n() - s.m());
    case ScenarioKind::InhomogeneousPositive:
      return p_exact(s.n() + 1, s.n() + 1 - s.m());
    case ScenarioKind::SubspacePositive:
      return p_exact(s.n(), s.m());
    case ScenarioKind::GameRowFavor:
      return p_exact(s.m() + s.n(), s.m());
    case ScenarioKind::PositiveIO:
      return p_exact(s.n() + s.m(), s.n());
  }
  throw std::logic_error("unreachable scenario kind");
}

std::vector<ExactProbability> step_distribution(int n) {
  if (n < 1) throw std::invalid_argument("step_distribution: n must be positive");
  BigInt denom = BigInt(1) << (n - 1);
  std::vector<ExactProbability> dist;
  dist.reserve(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    dist.emplace_back(Rational(binom(n - 1, m - 1), denom));
  }
  return dist;
}

}  // namespace geoprob::exact
