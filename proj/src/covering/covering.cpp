#include "mvph/covering/covering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mvph/core/error.hpp"

namespace mvph {

AxisIntervals::AxisIntervals(std::size_t axis, double origin, double range, std::size_t k,
                             double eps)
    : axis_(axis), origin_(origin), range_(range), k_(k), eps_(eps) {
  if (k_ == 0) throw DataError("axis " + std::to_string(axis) + ": cell count must be positive");
  if (!(eps_ > 0.0)) throw DataError("covering scale must be positive");
  if (range_ < 0.0) throw DataError("negative coordinate range");
  if (k_ >= 3 && !(range_ / static_cast<double>(k_) > eps_)) {
    std::ostringstream os;
    os << "axis " << axis << ": " << k_ << " cells of width R/k = " << range_ / k_
       << " do not exceed eps = " << eps_ << ", non-adjacent cells would overlap";
    throw DataError(os.str());
  }
}

Interval AxisIntervals::cell(std::size_t j) const {
  const double step = range_ / static_cast<double>(k_);
  return {origin_ + static_cast<double>(j) * step,
          origin_ + static_cast<double>(j + 1) * step + eps_};
}

Interval AxisIntervals::overlap(std::size_t j) const {
  return {cell(j + 1).lo, cell(j).hi};
}

namespace {

// Whether k^d < p, without overflow.
bool power_below(std::size_t k, std::size_t d, std::size_t p) {
  std::size_t acc = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (acc > p / std::max<std::size_t>(k, 1)) return false;
    acc *= k;
  }
  return acc < p;
}

}  // namespace

KChoice choose_k(std::size_t p, std::size_t d, double range, double eps) {
  if (p == 0 || d == 0) throw DataError("choose_k needs p >= 1 and d >= 1");
  if (!(eps > 0.0)) throw DataError("choose_k needs eps > 0");
  KChoice out;
  while (power_below(out.k_parallel + 1, d, p)) ++out.k_parallel;

  if (range > 0.0) {
    double guess = std::floor(range / eps);
    std::size_t k = guess > 1e9 ? std::size_t{1000000000} : static_cast<std::size_t>(guess);
    while (k >= 1 && !(range / static_cast<double>(k) > eps)) --k;
    while (range / static_cast<double>(k + 1) > eps && k < 1000000000) ++k;
    out.k_epsilon = k;
  }
  out.epsilon_capped = out.k_epsilon < out.k_parallel;
  out.k = std::max<std::size_t>(1, std::min(out.k_parallel, out.k_epsilon));
  return out;
}

std::vector<std::size_t> Covering::grid() const {
  std::vector<std::size_t> g;
  for (const auto& a : axes) g.push_back(a.cell_count());
  return g;
}

BoundingCube bounding_cube(const PointCloud& cloud) {
  if (cloud.empty()) throw DataError("cannot cover an empty point cloud");
  BoundingCube cube;
  for (std::size_t axis = 0; axis < cloud.dim(); ++axis) {
    double lo = cloud.coord(0, axis), hi = lo;
    for (Vertex v = 1; v < cloud.size(); ++v) {
      lo = std::min(lo, cloud.coord(v, axis));
      hi = std::max(hi, cloud.coord(v, axis));
    }
    cube.origin.push_back(lo);
    cube.range = std::max(cube.range, hi - lo);
  }
  return cube;
}

Covering build_covering(const PointCloud& cloud, double eps,
                        std::span<const std::size_t> k_per_axis) {
  if (!(eps > 0.0)) throw DataError("epsilon must be positive");
  const BoundingCube cube = bounding_cube(cloud);
  if (k_per_axis.size() != cloud.dim())
    throw DataError("grid has " + std::to_string(k_per_axis.size()) + " entries for a " +
                    std::to_string(cloud.dim()) + "-dimensional cloud");
  Covering cov;
  cov.range = cube.range;
  cov.epsilon = eps;
  for (std::size_t axis = 0; axis < cloud.dim(); ++axis) {
    std::size_t k = k_per_axis[axis];
    if (cube.range == 0.0 && k != 1) {
      cov.warnings.push_back("all points coincide; using one cell on axis " +
                             std::to_string(axis));
      k = 1;
    }
    cov.axes.emplace_back(axis, cube.origin[axis], cube.range, k, eps);
  }
  return cov;
}

Covering build_covering_for_parallelism(const PointCloud& cloud, double eps,
                                        std::size_t parallelism) {
  const BoundingCube cube = bounding_cube(cloud);
  std::size_t k = 1;
  std::vector<std::string> warnings;
  if (cube.range > 0.0) {
    const KChoice choice = choose_k(parallelism, cloud.dim(), cube.range, eps);
    k = choice.k;
    if (choice.epsilon_capped) {
      std::ostringstream os;
      os << "epsilon caps cells per axis at " << choice.k_epsilon << " (parallelism allows "
         << choice.k_parallel << ")";
      warnings.push_back(os.str());
    }
  }
  std::vector<std::size_t> grid(cloud.dim(), k);
  Covering cov = build_covering(cloud, eps, grid);
  cov.warnings.insert(cov.warnings.begin(), warnings.begin(), warnings.end());
  return cov;
}

Box Box::with(std::size_t axis, AxisSelector sel) const {
  Box out = *this;
  out.selectors_.at(axis) = sel;
  return out;
}

bool Box::is_leaf() const { return !first_full_axis().has_value(); }

std::optional<std::size_t> Box::first_full_axis() const {
  for (std::size_t i = 0; i < selectors_.size(); ++i)
    if (selectors_[i].kind == AxisSelector::Kind::Full) return i;
  return std::nullopt;
}

bool Box::contains(const Covering& covering, const PointCloud& cloud, Vertex v) const {
  for (std::size_t axis = 0; axis < selectors_.size(); ++axis) {
    const AxisSelector& s = selectors_[axis];
    const double x = cloud.coord(v, axis);
    switch (s.kind) {
      case AxisSelector::Kind::Full:
        break;
      case AxisSelector::Kind::Cell:
        if (!covering.axes[axis].in_cell(s.index, x)) return false;
        break;
      case AxisSelector::Kind::Overlap:
        if (!covering.axes[axis].in_overlap(s.index, x)) return false;
        break;
    }
  }
  return true;
}

std::vector<Vertex> Box::filter(const Covering& covering, const PointCloud& cloud,
                                std::span<const Vertex> candidates) const {
  std::vector<Vertex> out;
  for (Vertex v : candidates)
    if (contains(covering, cloud, v)) out.push_back(v);
  return out;
}

std::string Box::label() const {
  std::string out;
  for (std::size_t i = 0; i < selectors_.size(); ++i) {
    if (i) out += ',';
    switch (selectors_[i].kind) {
      case AxisSelector::Kind::Full:
        out += '*';
        break;
      case AxisSelector::Kind::Cell:
        out += 'c' + std::to_string(selectors_[i].index);
        break;
      case AxisSelector::Kind::Overlap:
        out += 'o' + std::to_string(selectors_[i].index);
        break;
    }
  }
  return out;
}

std::optional<std::size_t> assign_simplex(const Covering& covering, std::size_t axis,
                                          const PointCloud& cloud,
                                          std::span<const Vertex> vertices) {
  if (vertices.empty()) return std::nullopt;
  const AxisIntervals& ax = covering.axes.at(axis);
  double lo = cloud.coord(vertices[0], axis), hi = lo;
  for (Vertex v : vertices.subspan(1)) {
    lo = std::min(lo, cloud.coord(v, axis));
    hi = std::max(hi, cloud.coord(v, axis));
  }
  for (std::size_t j = 0; j < ax.cell_count(); ++j) {
    const Interval c = ax.cell(j);
    if (c.contains(lo) && c.contains(hi)) return j;
    if (c.lo > lo) break;  // later cells start even further right
  }
  return std::nullopt;
}

std::optional<Split> split_axis(const Box& box, const Covering& covering) {
  const auto axis = box.first_full_axis();
  if (!axis) return std::nullopt;
  Split out;
  out.axis = *axis;
  const AxisIntervals& ax = covering.axes.at(*axis);
  for (std::size_t j = 0; j < ax.cell_count(); ++j)
    out.pieces.push_back(box.with(*axis, AxisSelector::cell(j)));
  for (std::size_t j = 0; j < ax.overlap_count(); ++j)
    out.intersections.push_back(box.with(*axis, AxisSelector::overlap(j)));
  return out;
}

}  // namespace mvph
