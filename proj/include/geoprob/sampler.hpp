#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "geoprob/cloud.hpp"

namespace geoprob::sampler {

/// A reproducible random stream for one trial. The (master_seed,
/// trial_index, substream) triple fully determines the stream via a
/// counter-based hash, so trials can be drawn in any order or in parallel
/// and still produce identical results. Substreams are used to redraw a
/// trial whose float-mode verdict was degenerate.
class TrialRng {
 public:
  TrialRng(std::uint64_t master_seed, std::uint64_t trial_index,
           std::uint64_t substream = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);

  /// Standard normal via Box-Muller on a fresh pair of uniforms; stateless
  /// between calls so the draw sequence is easy to reason about.
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Spec-style stream accessor: the stream for trial `trial_index` under
/// `master_seed`.
inline TrialRng trial_rng(std::uint64_t master_seed, std::uint64_t trial_index) {
  return TrialRng(master_seed, trial_index);
}

/// Per-point sampling distribution; all random choices are symmetric with
/// respect to the origin.
struct DistributionSpec {
  enum class Kind { StdNormal, UniformCube, UniformSphere, FixedPoint };

  Kind kind = Kind::StdNormal;
  double half_width = 1.0;            // UniformCube
  std::vector<double> coordinates;    // FixedPoint

  static DistributionSpec std_normal();
  static DistributionSpec uniform_cube(double c);
  static DistributionSpec uniform_sphere();
  static DistributionSpec fixed_point(std::vector<double> coords);

  /// Accepts "normal", "cube:<c>", "sphere", "fixed:<x1,...,xd>".
  static DistributionSpec parse(const std::string& text);
  std::string str() const;
};

/// Shape of a cloud to sample: dimension plus one DistributionSpec per
/// point (points need not be identically distributed).
struct CloudSpec {
  int dim = 0;
  std::vector<DistributionSpec> points;

  CloudSpec() = default;
  CloudSpec(int d, std::vector<DistributionSpec> pts);

  std::size_t size() const { return points.size(); }
  void validate() const;

  /// n iid points under one spec.
  static CloudSpec iid(int dim, std::size_t n, DistributionSpec spec);
};

/// Draws each point independently per its spec; exact-zero draws are
/// rejected and redrawn so the PointCloud invariant always holds.
PointCloud sample_cloud(const CloudSpec& spec, TrialRng& rng);

/// A nonzero vector sampled coordinate-wise iid standard normal.
std::vector<double> sample_normal_vector(int dim, TrialRng& rng);

}  // namespace geoprob::sampler
