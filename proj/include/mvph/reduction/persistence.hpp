#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mvph/complex/rips_complex.hpp"
#include "mvph/core/field.hpp"
#include "mvph/core/point_cloud.hpp"

namespace mvph {

struct Bar {
  int dim = 0;
  double birth = 0.0;
  std::optional<double> death;  // nullopt: still alive at the top scale

  bool alive_at(double s) const { return birth <= s && (!death || s < *death); }
  friend bool operator==(const Bar&, const Bar&) = default;
};

// Barcode of the Rips filtration of `points` up to eps_max, homology
// dimensions 0..n_max. Simplices enter at their diameter; ties are broken by
// dimension, then lexicographically. Zero-length pairs are kept.
std::vector<Bar> persistence_barcode(const PointCloud& cloud, std::vector<Vertex> points,
                                     double eps_max, int n_max, Field field,
                                     std::size_t budget = kDefaultSimplexBudget);

// Betti numbers at scale s: bars of dimension n with birth <= s < death.
std::vector<std::size_t> betti_at(const std::vector<Bar>& bars, double s, int n_max);

}  // namespace mvph
