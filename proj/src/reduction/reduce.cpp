#include "mvph/reduction/reduce.hpp"

#include <algorithm>

namespace mvph {

std::size_t ReducedPair::rank() const {
  return static_cast<std::size_t>(std::count_if(reduced.columns.begin(), reduced.columns.end(),
                                                [](const SparseColumn& c) { return !c.empty(); }));
}

ReducedPair reduce(const SparseMatrix& boundary, const Field& field, ReduceOptions options) {
  const std::size_t n = boundary.cols();
  ReducedPair out;
  out.reduced.rows = boundary.rows;
  out.reduced.columns.resize(n);
  if (options.track_transform) {
    out.transform.rows = n;
    out.transform.columns.resize(n);
  }
  out.pivot_of_row.assign(boundary.rows, kNoPivot);

  SparseColumn scratch;
  for (std::size_t j = 0; j < n; ++j) {
    if (options.cleared && j < options.cleared->size() && (*options.cleared)[j]) {
      if (options.track_transform) out.transform.columns[j] = *(*options.cleared)[j];
      continue;
    }
    SparseColumn col = boundary.columns[j];
    SparseColumn v;
    if (options.track_transform) v.push_back({static_cast<std::uint32_t>(j), 1});
    while (!col.empty()) {
      const Entry lowest = col.back();
      const std::int64_t other = out.pivot_of_row[lowest.row];
      if (other == kNoPivot) break;
      const SparseColumn& pivot_col = out.reduced.columns[other];
      const Coeff factor = field.neg(field.mul(lowest.value, field.inv(pivot_col.back().value)));
      column_axpy(col, factor, pivot_col, field, scratch);
      if (options.track_transform)
        column_axpy(v, factor, out.transform.columns[other], field, scratch);
    }
    if (!col.empty()) out.pivot_of_row[col.back().row] = static_cast<std::int64_t>(j);
    out.reduced.columns[j] = std::move(col);
    if (options.track_transform) out.transform.columns[j] = std::move(v);
  }
  return out;
}

}  // namespace mvph
