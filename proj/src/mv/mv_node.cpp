#include "mvph/mv/mv_node.hpp"

#include <algorithm>
#include <iterator>
#include <string>

#include "mvph/core/error.hpp"

namespace mvph {

InducedMap induced_map(const HomologySolver& intersection, const HomologySolver& piece, int n,
                       int sign) {
  InducedMap out{n, DenseMatrix(piece.betti(n), intersection.betti(n))};
  const Field& field = piece.field();
  for (std::size_t c = 0; c < intersection.betti(n); ++c) {
    std::vector<Coeff> col;
    try {
      col = piece.coords(intersection.representative(n, c));
    } catch (const DataError& e) {
      throw InternalConsistencyError(
          std::string("intersection representative is not a cycle of the piece: ") + e.what());
    }
    for (std::size_t r = 0; r < col.size(); ++r)
      out.matrix.at(r, c) = sign < 0 ? field.neg(col[r]) : col[r];
  }
  return out;
}

FMatrix build_f(std::span<const SolverPtr> pieces, std::span<const SolverPtr> intersections,
                int n) {
  if (pieces.empty()) throw DataError("Mayer-Vietoris assembly needs at least one piece");
  if (intersections.size() + 1 != pieces.size())
    throw DataError("a path of " + std::to_string(pieces.size()) + " pieces needs " +
                    std::to_string(pieces.size() - 1) + " intersections");
  FMatrix f;
  f.dim = n;
  f.piece_offsets.push_back(0);
  for (const auto& p : pieces) f.piece_offsets.push_back(f.piece_offsets.back() + p->betti(n));
  f.intersection_offsets.push_back(0);
  for (const auto& q : intersections)
    f.intersection_offsets.push_back(f.intersection_offsets.back() + q->betti(n));
  f.matrix = DenseMatrix(f.piece_offsets.back(), f.intersection_offsets.back());

  for (std::size_t k = 0; k < intersections.size(); ++k) {
    const InducedMap into_left = induced_map(*intersections[k], *pieces[k], n, +1);
    const InducedMap into_right = induced_map(*intersections[k], *pieces[k + 1], n, -1);
    const std::size_t c0 = f.intersection_offsets[k];
    for (std::size_t c = 0; c < into_left.matrix.cols(); ++c) {
      for (std::size_t r = 0; r < into_left.matrix.rows(); ++r)
        f.matrix.at(f.piece_offsets[k] + r, c0 + c) = into_left.matrix.at(r, c);
      for (std::size_t r = 0; r < into_right.matrix.rows(); ++r)
        f.matrix.at(f.piece_offsets[k + 1] + r, c0 + c) = into_right.matrix.at(r, c);
    }
  }
  return f;
}

namespace {

bool sorted_subset(std::span<const Vertex> small, std::span<const Vertex> big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

bool sorted_disjoint(std::span<const Vertex> a, std::span<const Vertex> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i;
    else ++j;
  }
  return true;
}

}  // namespace

std::shared_ptr<const MVNodeSolver> MVNodeSolver::assemble(std::vector<SolverPtr> pieces,
                                                           std::vector<SolverPtr> intersections,
                                                           PieceAssigner assigner,
                                                           MVOptions options) {
  if (pieces.empty()) throw DataError("Mayer-Vietoris assembly needs at least one piece");
  if (intersections.size() + 1 != pieces.size())
    throw DataError("intersection count must be one less than the piece count");

  std::shared_ptr<MVNodeSolver> node(new MVNodeSolver());
  node->field_ = pieces.front()->field();
  node->scale_ = pieces.front()->scale();
  node->n_max_ = pieces.front()->max_dim();
  auto same_setup = [&](const SolverPtr& s) {
    return s->field() == node->field_ && s->scale() == node->scale_ &&
           s->max_dim() == node->n_max_;
  };
  if (!std::all_of(pieces.begin(), pieces.end(), same_setup) ||
      !std::all_of(intersections.begin(), intersections.end(), same_setup))
    throw DataError("pieces and intersections must share field, scale and dimension range");

  for (std::size_t k = 0; k < intersections.size(); ++k) {
    if (!sorted_subset(intersections[k]->points(), pieces[k]->points()) ||
        !sorted_subset(intersections[k]->points(), pieces[k + 1]->points()))
      throw DataError("intersection " + std::to_string(k) + " is not inside its two pieces");
  }
  for (std::size_t a = 0; a < pieces.size(); ++a)
    for (std::size_t b = a + 2; b < pieces.size(); ++b)
      if (!sorted_disjoint(pieces[a]->points(), pieces[b]->points()))
        throw DataError("pieces " + std::to_string(a) + " and " + std::to_string(b) +
                        " are not adjacent but share points");

  for (const auto& p : pieces) {
    std::vector<Vertex> merged;
    std::set_union(node->points_.begin(), node->points_.end(), p->points().begin(),
                   p->points().end(), std::back_inserter(merged));
    node->points_ = std::move(merged);
  }

  node->pieces_ = std::move(pieces);
  node->intersections_ = std::move(intersections);
  if (assigner) {
    node->assigner_ = std::move(assigner);
  } else {
    const MVNodeSolver* self = node.get();
    node->assigner_ = [self](std::span<const Vertex> vs) -> std::optional<std::size_t> {
      for (std::size_t k = 0; k < self->pieces_.size(); ++k)
        if (self->pieces_[k]->contains(vs)) return k;
      return std::nullopt;
    };
  }

  const int n_max = node->n_max_;
  node->dims_.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    DimensionData& d = node->dims_[n];
    d.f = build_f(node->pieces_, node->intersections_, n);
    if (options.corrupt_top_f && n == n_max)
      d.f.matrix = DenseMatrix(d.f.matrix.rows(), d.f.matrix.cols());
    d.image = column_space(d.f.matrix, node->field_);
    if (n < n_max) d.kernel = null_space(row_echelon(d.f.matrix, node->field_), node->field_);
  }

  MVDiagnostics& diag = node->diagnostics_;
  for (int n = 0; n <= n_max; ++n) {
    DimensionData& d = node->dims_[n];
    const auto& offsets = d.f.piece_offsets;
    for (std::size_t q : d.image.free_rows) {
      const std::size_t k =
          std::upper_bound(offsets.begin(), offsets.end(), q) - offsets.begin() - 1;
      d.reps.push_back(node->pieces_[k]->representative(n, q - offsets[k]));
    }
    if (n >= 1)
      for (const auto& u : node->dims_[n - 1].kernel.basis)
        d.reps.push_back(node->connecting_lift(n, u));

    std::size_t piece_sum = 0, inter_sum = 0;
    for (const auto& p : node->pieces_) piece_sum += p->betti(n);
    for (const auto& q : node->intersections_) inter_sum += q->betti(n);
    diag.betti.push_back(d.reps.size());
    diag.piece_betti_sum.push_back(piece_sum);
    diag.intersection_betti_sum.push_back(inter_sum);
    diag.rank_f.push_back(d.image.pivot_rows.size());
    diag.cokernel_dim.push_back(d.image.free_rows.size());
    diag.kernel_dim.push_back(n >= 1 ? node->dims_[n - 1].kernel.basis.size() : 0);

    // beta_n = sum beta_n(pieces) - rank f_n + sum beta_{n-1}(inters) - rank f_{n-1}
    std::size_t expected = piece_sum - diag.rank_f[n];
    if (n >= 1) expected += diag.intersection_betti_sum[n - 1] - diag.rank_f[n - 1];
    if (diag.betti[n] != expected)
      throw InternalConsistencyError("splitting identity violated in dimension " +
                                     std::to_string(n));
  }

  if (options.self_check) {
    for (int n = 0; n <= n_max; ++n)
      for (std::size_t i = 0; i < node->dims_[n].reps.size(); ++i) {
        const std::vector<Coeff> c = node->coords(node->dims_[n].reps[i]);
        for (std::size_t j = 0; j < c.size(); ++j)
          if (c[j] != (i == j ? 1u : 0u))
            throw InternalConsistencyError("representative " + std::to_string(i) +
                                           " of H_" + std::to_string(n) +
                                           " does not have unit coordinates");
      }
  }
  return node;
}

void MVNodeSolver::check_dim(int n) const {
  if (n < 0 || n > n_max_)
    throw DataError("homology dimension " + std::to_string(n) + " outside [0, " +
                    std::to_string(n_max_) + "]");
}

std::size_t MVNodeSolver::betti(int n) const {
  if (n < 0 || n > n_max_) return 0;
  return dims_[n].reps.size();
}

const Chain& MVNodeSolver::representative(int n, std::size_t i) const {
  check_dim(n);
  return dims_[n].reps.at(i);
}

std::size_t MVNodeSolver::rank_f(int n) const {
  check_dim(n);
  return dims_[n].image.pivot_rows.size();
}

std::vector<Chain> MVNodeSolver::split(const Chain& z) const {
  std::vector<Chain> parts(pieces_.size(), Chain(field_, z.dim()));
  for (const auto& [s, c] : z.terms()) {
    if (!contains(s.vertices()))
      throw DataError("simplex " + s.to_string() + " is outside the assembled region");
    const auto k = assigner_(s.vertices());
    if (!k || *k >= pieces_.size() || !pieces_[*k]->contains(s.vertices()))
      throw InternalConsistencyError("simplex " + s.to_string() +
                                     " cannot be assigned to a covering piece");
    parts[*k].add_term(s, c);
  }
  return parts;
}

std::vector<Chain> MVNodeSolver::intersection_cycles(int n, std::span<const Coeff> v) const {
  const auto& offsets = dims_.at(n).f.intersection_offsets;
  std::vector<Chain> out;
  for (std::size_t k = 0; k < intersections_.size(); ++k) {
    Chain c(field_, n);
    for (std::size_t i = 0; i < intersections_[k]->betti(n); ++i)
      if (v[offsets[k] + i] != 0) c.axpy(v[offsets[k] + i], intersections_[k]->representative(n, i));
    out.push_back(std::move(c));
  }
  return out;
}

// For u in ker f_{n-1}: c_k - c_{k-1} bounds in X_k, and the bounding
// chains glue into an n-cycle of the union whose connecting image is u.
Chain MVNodeSolver::connecting_lift(int n, std::span<const Coeff> kernel_vector) const {
  const std::vector<Chain> c = intersection_cycles(n - 1, kernel_vector);
  Chain lift(field_, n);
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    Chain t(field_, n - 1);
    if (k < c.size()) t += c[k];
    if (k > 0) t -= c[k - 1];
    const auto s = pieces_[k]->bound(t);
    if (!s)
      throw InternalConsistencyError("kernel vector of f_" + std::to_string(n - 1) +
                                     " does not bound in piece " + std::to_string(k));
    lift += *s;
  }
  if (!boundary(lift).is_zero())
    throw InternalConsistencyError("connecting lift is not a cycle");
  return lift;
}

MVNodeSolver::Chase MVNodeSolver::chase(const Chain& z) const {
  const int n = z.dim();
  check_dim(n);
  if (!(z.field() == field_)) throw DataError("chain field differs from the solver field");
  if (!boundary(z).is_zero()) throw DataError("chain of dimension " + std::to_string(n) +
                                              " is not a cycle");
  const std::size_t K = pieces_.size();
  const DimensionData& here = dims_[n];

  Chase out;
  std::vector<Chain> parts = split(z);
  out.cycles = parts;

  if (n >= 1 && K >= 2) {
    const DimensionData& below = dims_[n - 1];
    // Connecting image: w_k = d(z_0 + ... + z_k) lives in X_k cap X_k+1.
    std::vector<Coeff> u(below.f.matrix.cols(), 0);
    Chain partial(field_, n);
    for (std::size_t k = 0; k + 1 < K; ++k) {
      partial += parts[k];
      std::vector<Coeff> uk;
      try {
        uk = intersections_[k]->coords(boundary(partial));
      } catch (const DataError& e) {
        throw InternalConsistencyError(std::string("connecting map: ") + e.what());
      }
      std::copy(uk.begin(), uk.end(), u.begin() + below.f.intersection_offsets[k]);
    }
    if (!is_zero_vector(below.f.matrix.apply(u, field_)))
      throw InternalConsistencyError("connecting image is not in the kernel of f_" +
                                     std::to_string(n - 1));
    for (std::size_t f : below.kernel.free_cols) out.kernel.push_back(u[f]);

    Chain rest = z;
    if (!is_zero_vector(out.kernel)) {
      const std::size_t first_lift = here.image.free_rows.size();
      for (std::size_t r = 0; r < out.kernel.size(); ++r)
        rest.axpy(field_.neg(out.kernel[r]), here.reps[first_lift + r]);
      parts = split(rest);
    }

    // Now every w_k bounds in its intersection; correct the parts into cycles.
    std::vector<Chain> v;
    partial = Chain(field_, n);
    for (std::size_t k = 0; k + 1 < K; ++k) {
      partial += parts[k];
      auto vk = intersections_[k]->bound(boundary(partial));
      if (!vk) throw InternalConsistencyError("residual connecting image does not vanish");
      v.push_back(std::move(*vk));
    }
    for (std::size_t k = 0; k < K; ++k) {
      Chain xi = parts[k];
      if (k > 0) xi += v[k - 1];
      if (k + 1 < K) xi -= v[k];
      out.cycles[k] = std::move(xi);
    }
  } else if (n >= 1) {
    out.kernel.assign(dims_[n - 1].kernel.basis.size(), 0);
  }

  out.piece_coords.assign(here.f.matrix.rows(), 0);
  for (std::size_t k = 0; k < K; ++k) {
    std::vector<Coeff> ck;
    try {
      ck = pieces_[k]->coords(out.cycles[k]);
    } catch (const DataError& e) {
      throw InternalConsistencyError(std::string("piece decomposition: ") + e.what());
    }
    std::copy(ck.begin(), ck.end(), out.piece_coords.begin() + here.f.piece_offsets[k]);
  }
  out.cokernel = here.image.cokernel_coords(out.piece_coords, field_);
  return out;
}

std::vector<Coeff> MVNodeSolver::coords(const Chain& z) const {
  Chase c = chase(z);
  std::vector<Coeff> out = std::move(c.cokernel);
  out.insert(out.end(), c.kernel.begin(), c.kernel.end());
  return out;
}

std::optional<Chain> MVNodeSolver::bound(const Chain& z) const {
  Chase c = chase(z);
  if (!is_zero_vector(c.cokernel) || !is_zero_vector(c.kernel)) return std::nullopt;
  const int n = z.dim();
  const auto y = dims_[n].image.solve(c.piece_coords, field_);
  if (!y) throw InternalConsistencyError("piece classes of a null-homologous cycle are not in im f");
  const std::vector<Chain> cyc = intersection_cycles(n, *y);

  Chain w(field_, n + 1);
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    Chain t = c.cycles[k];
    if (k < cyc.size()) t -= cyc[k];
    if (k > 0) t += cyc[k - 1];
    const auto h = pieces_[k]->bound(t);
    if (!h)
      throw InternalConsistencyError("corrected piece cycle does not bound in piece " +
                                     std::to_string(k));
    w += *h;
  }
  verify_bounds(w, z, "union bound");
  return w;
}

}  // namespace mvph
