#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "mvph/core/homology_solver.hpp"
#include "mvph/reduction/dense_echelon.hpp"

namespace mvph {

using SolverPtr = std::shared_ptr<const HomologySolver>;

// Picks the piece a simplex is charged to when a union chain is split.
// Must return a piece whose region holds every vertex.
using PieceAssigner = std::function<std::optional<std::size_t>(std::span<const Vertex>)>;

// Matrix of the map H_n(intersection) -> H_n(piece) induced by inclusion,
// times `sign`. Column c holds the piece coordinates of the c-th
// intersection representative.
struct InducedMap {
  int dim = 0;
  DenseMatrix matrix;
};
InducedMap induced_map(const HomologySolver& intersection, const HomologySolver& piece, int n,
                       int sign);

// f_n : (+) H_n(X_k cap X_k+1) -> (+) H_n(X_k). Block (k, k) is the
// inclusion into X_k, block (k+1, k) minus the inclusion into X_k+1.
struct FMatrix {
  int dim = 0;
  DenseMatrix matrix;
  std::vector<std::size_t> piece_offsets;         // row offset per piece, plus total
  std::vector<std::size_t> intersection_offsets;  // column offset per intersection, plus total
};
FMatrix build_f(std::span<const SolverPtr> pieces, std::span<const SolverPtr> intersections,
                int n);

struct MVOptions {
  // Re-derive the coordinates of every stored representative after assembly
  // and require unit vectors.
  bool self_check = false;
  // Test hook: zero the matrix of f at the top homology dimension.
  bool corrupt_top_f = false;
};

// Per-dimension bookkeeping of one assembly; see the rank identity in
// MVNodeSolver::assemble.
struct MVDiagnostics {
  std::vector<std::size_t> betti;
  std::vector<std::size_t> piece_betti_sum;
  std::vector<std::size_t> intersection_betti_sum;
  std::vector<std::size_t> rank_f;
  std::vector<std::size_t> cokernel_dim;
  std::vector<std::size_t> kernel_dim;  // of f_{n-1}
};

// Homology of a union X = X_0 u ... u X_{K-1} of regions whose only
// nonempty pairwise intersections are consecutive, assembled from the
// solvers of the pieces and of X_k cap X_k+1 through the Mayer-Vietoris
// sequence: H_n(X) = coker f_n (+) ker f_{n-1}.
//
// Basis order of H_n(X): cokernel classes first (piece representatives at the
// non-pivot rows of f_n's reduced column space), then kernel classes (one
// connecting lift per free-variable null vector of f_{n-1}).
class MVNodeSolver final : public HomologySolver {
 public:
  static std::shared_ptr<const MVNodeSolver> assemble(std::vector<SolverPtr> pieces,
                                                      std::vector<SolverPtr> intersections,
                                                      PieceAssigner assigner = {},
                                                      MVOptions options = {});

  const Field& field() const override { return field_; }
  double scale() const override { return scale_; }
  int max_dim() const override { return n_max_; }
  std::span<const Vertex> points() const override { return points_; }

  std::size_t betti(int n) const override;
  const Chain& representative(int n, std::size_t i) const override;
  std::vector<Coeff> coords(const Chain& z) const override;
  std::optional<Chain> bound(const Chain& z) const override;

  const std::vector<SolverPtr>& pieces() const { return pieces_; }
  const std::vector<SolverPtr>& intersections() const { return intersections_; }
  const FMatrix& f_matrix(int n) const { return dims_.at(n).f; }
  std::size_t rank_f(int n) const;
  const MVDiagnostics& diagnostics() const { return diagnostics_; }

  // Splits a union chain by the assigner.
  std::vector<Chain> split(const Chain& z) const;

 private:
  struct DimensionData {
    FMatrix f;
    ColumnSpace image;
    NullSpace kernel;             // of f_n; lifted into H_{n+1}
    std::vector<Chain> reps;
  };
  struct Chase {
    std::vector<Coeff> cokernel;
    std::vector<Coeff> kernel;
    std::vector<Chain> cycles;    // xi_k, a cycle in piece k
    std::vector<Coeff> piece_coords;
  };

  MVNodeSolver() = default;
  Chase chase(const Chain& z) const;
  Chain connecting_lift(int n, std::span<const Coeff> kernel_vector) const;
  std::vector<Chain> intersection_cycles(int n, std::span<const Coeff> v) const;
  void check_dim(int n) const;

  Field field_{2};
  double scale_ = 0.0;
  int n_max_ = 0;
  std::vector<Vertex> points_;
  std::vector<SolverPtr> pieces_;
  std::vector<SolverPtr> intersections_;
  PieceAssigner assigner_;
  std::vector<DimensionData> dims_;
  MVDiagnostics diagnostics_;
};

}  // namespace mvph
