#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mvph/core/field.hpp"
#include "mvph/reduction/sparse_column.hpp"

namespace mvph {

inline constexpr std::int64_t kNoPivot = -1;

// R = D V with V upper unitriangular (upper triangular, invertible, when
// cleared columns are supplied). Nonzero columns of R have pairwise distinct
// lowest rows; pivot_of_row maps such a row back to its column.
struct ReducedPair {
  SparseMatrix reduced;
  SparseMatrix transform;  // empty when not tracked
  std::vector<std::int64_t> pivot_of_row;

  std::size_t rank() const;
  bool is_zero_column(std::size_t j) const { return reduced.columns[j].empty(); }
};

struct ReduceOptions {
  bool track_transform = true;
  // Clearing: columns with a known cycle (its lowest row equals the column
  // index) are set to zero in R and take that cycle as their V column.
  const std::vector<std::optional<SparseColumn>>* cleared = nullptr;
};

// Standard left-to-right column reduction.
ReducedPair reduce(const SparseMatrix& boundary, const Field& field, ReduceOptions options = {});

}  // namespace mvph
