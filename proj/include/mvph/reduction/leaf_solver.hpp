#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "mvph/complex/rips_complex.hpp"
#include "mvph/core/homology_solver.hpp"
#include "mvph/reduction/reduce.hpp"

namespace mvph {

struct LeafOptions {
  std::size_t budget = kDefaultSimplexBudget;
  bool clearing = false;
};

// Homology of a region computed directly by reducing its boundary matrices.
// The reductions (with V) are kept so coords/bound are a single elimination
// pass against the stored pivots.
class LeafSolver final : public HomologySolver {
 public:
  LeafSolver(RipsComplex complex, int n_max, Field field, LeafOptions options = {});

  const Field& field() const override { return field_; }
  double scale() const override { return complex_.scale(); }
  int max_dim() const override { return n_max_; }
  std::span<const Vertex> points() const override { return complex_.points(); }

  std::size_t betti(int n) const override;
  const Chain& representative(int n, std::size_t i) const override;
  std::vector<Coeff> coords(const Chain& z) const override;
  std::optional<Chain> bound(const Chain& z) const override;

  const RipsComplex& complex() const { return complex_; }
  // rank of the boundary map out of dimension n (0 for n == 0).
  std::size_t boundary_rank(int n) const;
  const ReducedPair& reduction(int n) const { return reduced_.at(n); }
  const SparseMatrix& boundary(int n) const { return boundary_.at(n); }

 private:
  struct Homology {
    std::vector<SparseColumn> cycles;  // lowest coefficient normalised to 1
    std::vector<Chain> chains;
    std::vector<std::int64_t> rep_of_row;
  };
  struct Decomposition {
    std::vector<Coeff> coords;
    SparseColumn preimage;  // over (n+1)-simplices
  };

  SparseColumn to_column(const Chain& z) const;
  Chain to_chain(const SparseColumn& col, int dim) const;
  Decomposition decompose(const Chain& z) const;
  void check_dim(int n) const;

  RipsComplex complex_;
  Field field_;
  int n_max_;
  std::vector<SparseMatrix> boundary_;  // index n holds d_n, n = 1..n_max+1
  std::vector<ReducedPair> reduced_;
  std::vector<Homology> homology_;      // index n = 0..n_max
};

std::shared_ptr<const LeafSolver> build_leaf(const NeighborGraph& graph, double scale, int n_max,
                                             Field field, LeafOptions options = {});
std::shared_ptr<const LeafSolver> build_leaf(const PointCloud& cloud, std::vector<Vertex> points,
                                             double scale, int n_max, Field field,
                                             LeafOptions options = {});

}  // namespace mvph
