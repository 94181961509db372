#pragma once

#include <cstdint>
#include <vector>

#include "geoprob/cloud.hpp"
#include "geoprob/types.hpp"

namespace geoprob::geometry {

using sampler::PointCloud;

/// Is the origin in the convex hull of the cloud? LP feasibility of
/// t >= 0, sum t_i = 1, sum t_i z_i = 0.
Verdict origin_in_hull(const PointCloud& cloud, const ArithmeticMode& mode);

/// Do all points lie in a common open half-space? Encoded as
/// maximize delta s.t. <v, z_i> >= delta, -1 <= v_j <= 1; true iff the
/// optimum is positive. Dual to origin_in_hull: generically exactly one of
/// the two holds for a given cloud.
Verdict in_common_halfspace(const PointCloud& cloud, const ArithmeticMode& mode);

/// Does Ax = 0 admit a positive solution (x >= 0, x != 0)? A is the m x n
/// matrix whose columns are the cloud points. Equivalent to origin_in_hull
/// on the columns.
Verdict homogeneous_positive_solution(const PointCloud& columns,
                                      const ArithmeticMode& mode);

/// Does Ax = b admit a solution x >= 0? Requires b != 0 (use the
/// homogeneous oracle for b = 0); x != 0 is then automatic.
Verdict inhomogeneous_positive_solution(const PointCloud& columns,
                                        const std::vector<double>& b,
                                        const ArithmeticMode& mode);

/// Does the row space of the m x n matrix A contain a positive vector
/// (strict: a strictly positive vector)? The subspace element is A^T y;
/// positivity is normalized via sum(A^T y) = 1, strictness via A^T y >= 1.
Verdict subspace_contains_positive(const PointCloud& columns, bool strict,
                                   const ArithmeticMode& mode);

/// Does some input x >= 0 yield a strictly positive output Ax > 0?
/// Encoded as Ax >= 1 by scaling.
Verdict positive_io(const PointCloud& columns, const ArithmeticMode& mode);

/// A candidate region of a central hyperplane arrangement: the sign of
/// <v, z_i> for each normal z_i.
struct SignVector {
  std::vector<std::int8_t> signs;  // entries are +1 or -1

  bool operator==(const SignVector&) const = default;
};

/// Result of the exhaustive region census of the arrangement of hyperplanes
/// orthogonal to the given normals.
struct RegionCensus {
  std::uint64_t region_count = 0;
  std::vector<SignVector> feasible_signs;  // lexicographic, +1 before -1
  bool generic = false;  // count matches the closed-form value
};

struct SweepOptions {
  bool allow_large = false;   // lift the n <= 20 cost guard
  unsigned threads = 0;       // 0 = hardware concurrency
  bool keep_signs = true;     // record feasible sign vectors, not just counts
};

/// Enumerates all 2^n sign vectors; a sign vector is feasible iff the
/// correspondingly reflected points lie in a common open half-space.
RegionCensus count_regions(const PointCloud& normals, const ArithmeticMode& mode,
                           const SweepOptions& opts = {});

/// Classification of the regions of the arrangement of H_1..H_{n-1}
/// (normals) against one more hyperplane H_n (normal h): tau1 counts the
/// regions whose interior meets H_n, tau2 the rest. For generic inputs
/// tau1 + tau2 = r(n-1, d), 2*tau1 + tau2 = r(n, d), tau1 = r(n-1, d-1).
struct SplitCounts {
  std::uint64_t tau1 = 0;
  std::uint64_t tau2 = 0;
  bool generic = false;  // both census relations above hold
};

SplitCounts split_counts(const PointCloud& normals, const std::vector<double>& h,
                         const ArithmeticMode& mode, const SweepOptions& opts = {});

}  // namespace geoprob::geometry
