#include "mvph/reduction/leaf_solver.hpp"

#include <algorithm>
#include <string>

#include "mvph/core/error.hpp"

namespace mvph {

LeafSolver::LeafSolver(RipsComplex complex, int n_max, Field field, LeafOptions options)
    : complex_(std::move(complex)), field_(field), n_max_(n_max) {
  if (n_max_ < 0) throw DataError("maximum homology dimension must be nonnegative");
  if (complex_.max_dim() < n_max_ + 1)
    throw DataError("leaf complex must reach dimension n_max + 1");
  const int top = n_max_ + 1;
  boundary_.resize(top + 1);
  reduced_.resize(top + 1);
  for (int n = 1; n <= top; ++n) boundary_[n] = boundary_matrix(complex_, n, field_);

  if (options.clearing) {
    // Top-down: every pivot row of d_{n+1} is a boundary, so that column of
    // d_n is a cycle and needs no reduction.
    for (int n = top; n >= 1; --n) {
      std::vector<std::optional<SparseColumn>> cleared;
      if (n < top) {
        const ReducedPair& above = reduced_[n + 1];
        cleared.resize(boundary_[n].cols());
        for (std::size_t row = 0; row < above.pivot_of_row.size(); ++row)
          if (above.pivot_of_row[row] != kNoPivot)
            cleared[row] = above.reduced.columns[above.pivot_of_row[row]];
      }
      reduced_[n] = reduce(boundary_[n], field_, {true, n < top ? &cleared : nullptr});
    }
  } else {
    for (int n = 1; n <= top; ++n) reduced_[n] = reduce(boundary_[n], field_);
  }

  homology_.resize(n_max_ + 1);
  for (int n = 0; n <= n_max_; ++n) {
    Homology& h = homology_[n];
    const std::size_t count = complex_.count(n);
    h.rep_of_row.assign(count, kNoPivot);
    const auto& hit = reduced_[n + 1].pivot_of_row;
    for (std::size_t j = 0; j < count; ++j) {
      if (n > 0 && !reduced_[n].is_zero_column(j)) continue;
      if (hit[j] != kNoPivot) continue;
      SparseColumn cycle = n == 0 ? SparseColumn{{static_cast<std::uint32_t>(j), 1}}
                                  : reduced_[n].transform.columns[j];
      const Coeff lead = cycle.back().value;
      if (lead != 1) {
        const Coeff scale_by = field_.inv(lead);
        for (Entry& e : cycle) e.value = field_.mul(e.value, scale_by);
      }
      h.rep_of_row[j] = static_cast<std::int64_t>(h.cycles.size());
      h.chains.push_back(to_chain(cycle, n));
      h.cycles.push_back(std::move(cycle));
    }
  }
}

void LeafSolver::check_dim(int n) const {
  if (n < 0 || n > n_max_)
    throw DataError("homology dimension " + std::to_string(n) + " outside [0, " +
                    std::to_string(n_max_) + "]");
}

std::size_t LeafSolver::betti(int n) const {
  if (n < 0 || n > n_max_) return 0;
  return homology_[n].cycles.size();
}

const Chain& LeafSolver::representative(int n, std::size_t i) const {
  check_dim(n);
  return homology_[n].chains.at(i);
}

std::size_t LeafSolver::boundary_rank(int n) const {
  if (n <= 0 || n >= static_cast<int>(reduced_.size())) return 0;
  return reduced_[n].rank();
}

SparseColumn LeafSolver::to_column(const Chain& z) const {
  if (!(z.field() == field_)) throw DataError("chain field differs from the solver field");
  SparseColumn col;
  col.reserve(z.size());
  for (const auto& [s, c] : z.terms()) {
    const auto idx = complex_.index_of(s);
    if (!idx)
      throw DataError("simplex " + s.to_string() + " is not in the region's complex");
    col.push_back({*idx, c});
  }
  std::sort(col.begin(), col.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  return col;
}

Chain LeafSolver::to_chain(const SparseColumn& col, int dim) const {
  Chain out(field_, dim);
  const auto list = complex_.simplices(dim);
  for (const Entry& e : col) out.add_term(list[e.row], e.value);
  return out;
}

LeafSolver::Decomposition LeafSolver::decompose(const Chain& z) const {
  const int n = z.dim();
  check_dim(n);
  const Homology& h = homology_[n];
  const ReducedPair& above = reduced_[n + 1];

  Decomposition out;
  out.coords.assign(h.cycles.size(), 0);
  SparseColumn residual = to_column(z);
  const SparseColumn original = residual;
  SparseColumn acc, scratch;
  while (!residual.empty()) {
    const Entry lowest = residual.back();
    if (const std::int64_t b = above.pivot_of_row[lowest.row]; b != kNoPivot) {
      const SparseColumn& col = above.reduced.columns[b];
      const Coeff factor = field_.neg(field_.mul(lowest.value, field_.inv(col.back().value)));
      column_axpy(residual, factor, col, field_, scratch);
      column_axpy(acc, factor, above.transform.columns[b], field_, scratch);
    } else if (const std::int64_t r = h.rep_of_row[lowest.row]; r != kNoPivot) {
      out.coords[r] = field_.add(out.coords[r], lowest.value);
      column_axpy(residual, field_.neg(lowest.value), h.cycles[r], field_, scratch);
    } else {
      throw DataError("chain of dimension " + std::to_string(n) + " is not a cycle");
    }
  }
  // z - sum c_r rep_r = d(-acc)
  for (Entry& e : acc) e.value = field_.neg(e.value);
  out.preimage = std::move(acc);

  SparseColumn lhs, rhs = original;
  for (const Entry& e : out.preimage)
    column_axpy(lhs, e.value, boundary_[n + 1].columns[e.row], field_, scratch);
  for (std::size_t r = 0; r < out.coords.size(); ++r)
    column_axpy(rhs, field_.neg(out.coords[r]), h.cycles[r], field_, scratch);
  if (lhs != rhs) throw InternalConsistencyError("leaf coordinate decomposition failed to verify");
  contract_counters().coords_verified.fetch_add(1, std::memory_order_relaxed);
  return out;
}

std::vector<Coeff> LeafSolver::coords(const Chain& z) const { return decompose(z).coords; }

std::optional<Chain> LeafSolver::bound(const Chain& z) const {
  Decomposition d = decompose(z);
  if (!is_zero_vector(d.coords)) return std::nullopt;
  Chain w = to_chain(d.preimage, z.dim() + 1);
  verify_bounds(w, z, "leaf bound");
  return w;
}

std::shared_ptr<const LeafSolver> build_leaf(const NeighborGraph& graph, double scale, int n_max,
                                             Field field, LeafOptions options) {
  return std::make_shared<const LeafSolver>(enumerate(graph, scale, n_max + 1, options.budget),
                                            n_max, field, options);
}

std::shared_ptr<const LeafSolver> build_leaf(const PointCloud& cloud, std::vector<Vertex> points,
                                             double scale, int n_max, Field field,
                                             LeafOptions options) {
  NeighborGraph graph(cloud, std::move(points), scale);
  return build_leaf(graph, scale, n_max, field, options);
}

}  // namespace mvph
