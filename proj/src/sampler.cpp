#include "geoprob/sampler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace geoprob::sampler {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

bool all_zero(const std::vector<double>& v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

}  // namespace

TrialRng::TrialRng(std::uint64_t master_seed, std::uint64_t trial_index,
                   std::uint64_t substream) {
  std::uint64_t state = splitmix64(master_seed);
  state = splitmix64(state ^ splitmix64(trial_index + 0x51ed2701a9e3d6a1ULL));
  state = splitmix64(state ^ splitmix64(substream + 0xc2b2ae3d27d4eb4fULL));
  engine_.seed(state);
}

double TrialRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double TrialRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

double TrialRng::normal() {
  // u1 in (0, 1] so the log is finite.
  double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

DistributionSpec DistributionSpec::std_normal() { return {}; }

DistributionSpec DistributionSpec::uniform_cube(double c) {
  if (!(c > 0)) throw std::invalid_argument("cube half-width must be positive");
  DistributionSpec s;
  s.kind = Kind::UniformCube;
  s.half_width = c;
  return s;
}

DistributionSpec DistributionSpec::uniform_sphere() {
  DistributionSpec s;
  s.kind = Kind::UniformSphere;
  return s;
}

DistributionSpec DistributionSpec::fixed_point(std::vector<double> coords) {
  if (all_zero(coords)) {
    throw std::invalid_argument("fixed point must be a nonzero vector");
  }
  DistributionSpec s;
  s.kind = Kind::FixedPoint;
  s.coordinates = std::move(coords);
  return s;
}

DistributionSpec DistributionSpec::parse(const std::string& text) {
  if (text == "normal") return std_normal();
  if (text == "sphere") return uniform_sphere();
  if (text.rfind("cube:", 0) == 0) return uniform_cube(std::stod(text.substr(5)));
  if (text.rfind("fixed:", 0) == 0) {
    std::vector<double> coords;
    std::stringstream in(text.substr(6));
    std::string item;
    while (std::getline(in, item, ',')) coords.push_back(std::stod(item));
    if (coords.empty()) throw std::invalid_argument("fixed: needs coordinates");
    return fixed_point(std::move(coords));
  }
  throw std::invalid_argument("unknown distribution spec: " + text);
}

std::string DistributionSpec::str() const {
  switch (kind) {
    case Kind::StdNormal:
      return "normal";
    case Kind::UniformCube:
      return "cube:" + std::to_string(half_width);
    case Kind::UniformSphere:
      return "sphere";
    case Kind::FixedPoint: {
      std::string out = "fixed:";
      for (std::size_t i = 0; i < coordinates.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(coordinates[i]);
      }
      return out;
    }
  }
  return "?";
}

CloudSpec::CloudSpec(int d, std::vector<DistributionSpec> pts)
    : dim(d), points(std::move(pts)) {
  validate();
}

void CloudSpec::validate() const {
  if (dim < 1) throw std::invalid_argument("cloud dimension must be >= 1");
  if (points.empty()) throw std::invalid_argument("cloud needs at least one point");
  for (const auto& spec : points) {
    if (spec.kind == DistributionSpec::Kind::FixedPoint &&
        spec.coordinates.size() != static_cast<std::size_t>(dim)) {
      throw std::invalid_argument("fixed point length does not match dimension");
    }
  }
}

CloudSpec CloudSpec::iid(int dim, std::size_t n, DistributionSpec spec) {
  return CloudSpec(dim, std::vector<DistributionSpec>(n, std::move(spec)));
}

std::vector<double> sample_normal_vector(int dim, TrialRng& rng) {
  std::vector<double> v(static_cast<std::size_t>(dim));
  for (;;) {
    for (auto& x : v) x = rng.normal();
    if (!all_zero(v)) return v;
  }
}

PointCloud sample_cloud(const CloudSpec& spec, TrialRng& rng) {
  spec.validate();
  PointCloud cloud;
  cloud.dim = spec.dim;
  cloud.points.reserve(spec.size());
  const auto d = static_cast<std::size_t>(spec.dim);
  for (const auto& point_spec : spec.points) {
    std::vector<double> p(d);
    switch (point_spec.kind) {
      case DistributionSpec::Kind::FixedPoint:
        p = point_spec.coordinates;
        break;
      case DistributionSpec::Kind::StdNormal:
        do {
          for (auto& x : p) x = rng.normal();
        } while (all_zero(p));
        break;
      case DistributionSpec::Kind::UniformCube:
        do {
          for (auto& x : p) {
            x = rng.uniform(-point_spec.half_width, point_spec.half_width);
          }
        } while (all_zero(p));
        break;
      case DistributionSpec::Kind::UniformSphere: {
        double norm = 0.0;
        do {
          norm = 0.0;
          for (auto& x : p) {
            x = rng.normal();
            norm += x * x;
          }
          norm = std::sqrt(norm);
        } while (norm < 1e-150);
        for (auto& x : p) x /= norm;
        break;
      }
    }
    cloud.points.push_back(std::move(p));
  }
  cloud.validate();
  return cloud;
}

}  // namespace geoprob::sampler
