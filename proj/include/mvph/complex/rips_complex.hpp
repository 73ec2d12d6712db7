#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mvph/core/chain.hpp"
#include "mvph/core/field.hpp"
#include "mvph/core/point_cloud.hpp"
#include "mvph/reduction/sparse_column.hpp"

namespace mvph {

inline constexpr std::size_t kDefaultSimplexBudget = 10'000'000;

// Pairwise distances of a region up to a threshold, computed once and
// filtered for every smaller scale.
class NeighborGraph {
 public:
  struct Edge {
    std::uint32_t to;  // local index, always greater than the owner
    double length;
  };

  NeighborGraph(const PointCloud& cloud, std::vector<Vertex> points, double threshold);

  std::span<const Vertex> points() const { return points_; }
  double threshold() const { return threshold_; }
  // Edges to higher local indices, sorted by target.
  std::span<const Edge> upper_edges(std::uint32_t local) const { return adjacency_[local]; }
  std::size_t edge_count() const;

 private:
  std::vector<Vertex> points_;
  double threshold_;
  std::vector<std::vector<Edge>> adjacency_;
};

// The Rips complex of a point set at a fixed scale, truncated at max_dim.
// Simplices of each dimension are kept in lexicographic order; the position
// in that list is the simplex's row/column index in boundary matrices.
class RipsComplex {
 public:
  std::span<const Vertex> points() const { return points_; }
  double scale() const { return scale_; }
  int max_dim() const { return max_dim_; }

  std::size_t count(int dim) const;
  std::size_t total_count() const;
  std::span<const Simplex> simplices(int dim) const;
  std::optional<std::uint32_t> index_of(const Simplex& s) const;

 private:
  friend RipsComplex enumerate(const NeighborGraph&, double, int, std::size_t);

  std::vector<Vertex> points_;
  double scale_ = 0.0;
  int max_dim_ = 0;
  std::vector<std::vector<Simplex>> by_dim_;
};

// All simplices of dimension <= max_dim whose diameter is <= scale.
// Throws BudgetExceeded when more than `budget` simplices would be stored.
RipsComplex enumerate(const NeighborGraph& graph, double scale, int max_dim,
                      std::size_t budget = kDefaultSimplexBudget);
RipsComplex enumerate(const PointCloud& cloud, std::vector<Vertex> points, double scale,
                      int max_dim, std::size_t budget = kDefaultSimplexBudget);

// Columns: n-simplices; rows: (n-1)-simplices. Requires 1 <= n <= max_dim.
SparseMatrix boundary_matrix(const RipsComplex& complex, int n, const Field& field);

}  // namespace mvph
