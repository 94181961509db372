#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace geoprob::sampler {

/// An ordered list of n vectors in R^d. Doubles as the column list
/// z_1 .. z_n of an m x n matrix with m = dim (entry(i, j) = z_j[i]).
struct PointCloud {
  int dim = 0;
  std::vector<std::vector<double>> points;

  PointCloud() = default;
  PointCloud(int d, std::vector<std::vector<double>> pts)
      : dim(d), points(std::move(pts)) {
    validate();
  }

  std::size_t size() const { return points.size(); }
  double entry(std::size_t i, std::size_t j) const { return points[j][i]; }

  void validate() const {
    if (dim < 1) throw std::invalid_argument("point cloud dimension must be >= 1");
    if (points.empty()) throw std::invalid_argument("point cloud must be nonempty");
    for (const auto& p : points) {
      if (p.size() != static_cast<std::size_t>(dim)) {
        throw std::invalid_argument("point length does not match cloud dimension");
      }
      bool all_zero = true;
      for (double v : p) {
        if (v != 0.0) {
          all_zero = false;
          break;
        }
      }
      if (all_zero) throw std::invalid_argument("point cloud contains a zero vector");
    }
  }
};

/// Columns interpretation helper: the m x n matrix whose columns are the
/// cloud points, m = cloud.dim, n = cloud.size().
inline std::size_t matrix_rows(const PointCloud& c) { return static_cast<std::size_t>(c.dim); }
inline std::size_t matrix_cols(const PointCloud& c) { return c.size(); }

}  // namespace geoprob::sampler
