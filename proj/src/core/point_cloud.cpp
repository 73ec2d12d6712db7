#include "mvph/core/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mvph/core/error.hpp"

namespace mvph {

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 && !coords_.empty()) throw DataError("point cloud with dimension 0");
  if (dim_ != 0 && coords_.size() % dim_ != 0)
    throw DataError("coordinate count is not a multiple of the dimension");
  for (double c : coords_)
    if (!std::isfinite(c)) throw DataError("non-finite coordinate in point cloud");
}

PointCloud PointCloud::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t dim = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != dim)
      throw DataError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                      " coordinates, expected " + std::to_string(dim));
    flat.insert(flat.end(), rows[r].begin(), rows[r].end());
  }
  return PointCloud(dim, std::move(flat));
}

std::span<const double> PointCloud::point(Vertex i) const {
  if (i >= size()) throw DataError("point index " + std::to_string(i) + " out of range");
  return {coords_.data() + std::size_t{i} * dim_, dim_};
}

double PointCloud::distance(Vertex i, Vertex j) const {
  if (i >= size() || j >= size())
    throw DataError("point index out of range in distance(" + std::to_string(i) + ", " +
                    std::to_string(j) + ")");
  return distance_unchecked(i, j);
}

double PointCloud::distance_unchecked(Vertex i, Vertex j) const {
  if (i == j) return 0.0;
  // Fixed summation order keeps d(i, j) == d(j, i) bit for bit.
  if (i > j) std::swap(i, j);
  const double* a = coords_.data() + std::size_t{i} * dim_;
  const double* b = coords_.data() + std::size_t{j} * dim_;
  double sum = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double diameter(const PointCloud& cloud, std::span<const Vertex> vertices) {
  if (vertices.empty()) throw DataError("diameter of an empty vertex set");
  double best = 0.0;
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      best = std::max(best, cloud.distance(vertices[a], vertices[b]));
  if (vertices.size() == 1) (void)cloud.point(vertices[0]);
  return best;
}

}  // namespace mvph
