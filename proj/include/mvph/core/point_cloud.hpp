#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mvph {

// Global point index. Subsets of a cloud are always index sets into the
// original cloud, never renumbered copies.
using Vertex = std::uint32_t;

// A finite set of points in R^d with the Euclidean metric.
class PointCloud {
 public:
  PointCloud() = default;
  // `coords` is row-major, size() * dim entries. All entries must be finite.
  PointCloud(std::size_t dim, std::vector<double> coords);
  static PointCloud from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return size() == 0; }

  std::span<const double> point(Vertex i) const;
  double coord(Vertex i, std::size_t axis) const { return coords_[i * dim_ + axis]; }
  const std::vector<double>& raw() const { return coords_; }

  // Checked Euclidean distance.
  double distance(Vertex i, Vertex j) const;
  // Unchecked; callers guarantee valid indices.
  double distance_unchecked(Vertex i, Vertex j) const;

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

// Largest pairwise distance of a nonempty vertex set; 0 for singletons.
double diameter(const PointCloud& cloud, std::span<const Vertex> vertices);

}  // namespace mvph
