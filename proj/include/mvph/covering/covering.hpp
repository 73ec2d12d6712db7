#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvph/core/point_cloud.hpp"

namespace mvph {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

// The cells of one coordinate axis:
//   cell j    = [a + j R/k, a + (j+1) R/k + eps]     j = 0..k-1
//   overlap j = cell j  intersected with cell j+1   j = 0..k-2
// Indices are zero-based. Membership in an overlap is decided by the two cell
// tests, so an overlap is exactly the intersection of its neighbours.
class AxisIntervals {
 public:
  // Throws DataError unless k >= 1, eps > 0 and, for k >= 3, R/k > eps
  // (cells two apart must be disjoint). Two cells have no non-adjacent pair,
  // so k = 2 is always accepted.
  AxisIntervals(std::size_t axis, double origin, double range, std::size_t k, double eps);

  std::size_t axis() const { return axis_; }
  double origin() const { return origin_; }
  double range() const { return range_; }
  double epsilon() const { return eps_; }
  std::size_t cell_count() const { return k_; }
  std::size_t overlap_count() const { return k_ - 1; }

  Interval cell(std::size_t j) const;
  Interval overlap(std::size_t j) const;

  bool in_cell(std::size_t j, double x) const { return cell(j).contains(x); }
  bool in_overlap(std::size_t j, double x) const {
    return in_cell(j, x) && in_cell(j + 1, x);
  }

 private:
  std::size_t axis_;
  double origin_;
  double range_;
  std::size_t k_;
  double eps_;
};

struct KChoice {
  std::size_t k = 1;
  std::size_t k_parallel = 0;  // largest integer with k^d < p
  std::size_t k_epsilon = 0;   // largest integer with R/k > eps
  bool epsilon_capped = false; // k_epsilon < k_parallel
};

// Cells per axis for at most p concurrent leaf computations in dimension d.
KChoice choose_k(std::size_t p, std::size_t d, double range, double eps);

// The grid covering of a cloud: one shared range R across axes, per-axis
// origins at the coordinate minima.
struct Covering {
  double range = 0.0;
  double epsilon = 0.0;
  std::vector<AxisIntervals> axes;
  std::vector<std::string> warnings;

  std::size_t dim() const { return axes.size(); }
  std::vector<std::size_t> grid() const;
};

// Largest per-coordinate spread and per-axis minima.
struct BoundingCube {
  std::vector<double> origin;
  double range = 0.0;
};
BoundingCube bounding_cube(const PointCloud& cloud);

// Explicit cells per axis (size must equal the cloud dimension).
Covering build_covering(const PointCloud& cloud, double eps, std::span<const std::size_t> k_per_axis);
// Cells per axis from choose_k(parallelism, d, R, eps); records a warning when
// eps caps k.
Covering build_covering_for_parallelism(const PointCloud& cloud, double eps,
                                        std::size_t parallelism);

struct AxisSelector {
  enum class Kind { Full, Cell, Overlap };
  Kind kind = Kind::Full;
  std::size_t index = 0;

  static AxisSelector full() { return {Kind::Full, 0}; }
  static AxisSelector cell(std::size_t j) { return {Kind::Cell, j}; }
  static AxisSelector overlap(std::size_t j) { return {Kind::Overlap, j}; }

  friend bool operator==(const AxisSelector&, const AxisSelector&) = default;
};

// A covering region: one selector per axis. All-Full is the whole cloud;
// Cell on every axis is a cube.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<AxisSelector> selectors) : selectors_(std::move(selectors)) {}
  static Box whole(std::size_t dim) { return Box(std::vector<AxisSelector>(dim)); }

  std::size_t dim() const { return selectors_.size(); }
  const AxisSelector& selector(std::size_t axis) const { return selectors_[axis]; }
  Box with(std::size_t axis, AxisSelector sel) const;
  bool is_leaf() const;
  std::optional<std::size_t> first_full_axis() const;

  bool contains(const Covering& covering, const PointCloud& cloud, Vertex v) const;
  // Members of `candidates` that lie in this box, order preserved.
  std::vector<Vertex> filter(const Covering& covering, const PointCloud& cloud,
                             std::span<const Vertex> candidates) const;

  // e.g. "*,c1,o0": Full, Cell(1), Overlap(0).
  std::string label() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<AxisSelector> selectors_;
};

// Lowest cell index j along `axis` whose interval holds the axis coordinate
// of every vertex. nullopt means the vertex set is wider than eps along the
// axis, i.e. the caller broke the diameter precondition.
std::optional<std::size_t> assign_simplex(const Covering& covering, std::size_t axis,
                                          const PointCloud& cloud,
                                          std::span<const Vertex> vertices);

struct Split {
  std::size_t axis = 0;
  std::vector<Box> pieces;         // selector Cell(j) on `axis`
  std::vector<Box> intersections;  // selector Overlap(j) on `axis`
};

// Splits along the first Full axis; nullopt for a leaf box.
std::optional<Split> split_axis(const Box& box, const Covering& covering);

}  // namespace mvph
