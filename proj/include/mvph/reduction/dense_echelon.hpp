#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mvph/core/field.hpp"

namespace mvph {

// Row-major dense matrix over F_p; used for the small homology-level maps.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Coeff& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Coeff> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  DenseMatrix transposed() const;
  std::vector<Coeff> apply(std::span<const Coeff> x, const Field& field) const;

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Coeff> data_;
};

// Reduced row echelon form R = E A with E invertible.
struct RowEchelon {
  DenseMatrix reduced;
  DenseMatrix transform;
  std::vector<std::size_t> pivot_cols;  // pivot column of row i, i < rank

  std::size_t rank() const { return pivot_cols.size(); }
};

RowEchelon row_echelon(const DenseMatrix& a, const Field& field);

// Null space of A with the free-variable basis: one vector per non-pivot
// column f, with a 1 at f and 0 at every other free column.
struct NullSpace {
  std::vector<std::size_t> free_cols;
  std::vector<std::vector<Coeff>> basis;
};
NullSpace null_space(const RowEchelon& echelon, const Field& field);

// Column space of A in reduced form: basis vector i has a 1 at pivot_rows[i]
// and 0 at every other pivot row; preimages[i] is some y with A y = basis[i].
// Computed from the row echelon form of A transposed.
struct ColumnSpace {
  std::size_t ambient = 0;  // rows of A
  std::size_t domain = 0;   // columns of A
  std::vector<std::size_t> pivot_rows;
  std::vector<std::size_t> free_rows;  // complement, ascending
  std::vector<std::vector<Coeff>> basis;
  std::vector<std::vector<Coeff>> preimages;

  // x minus its pivot-row components; zero exactly when x is in the span.
  std::vector<Coeff> residual(std::span<const Coeff> x, const Field& field) const;
  // Residual restricted to free_rows: coordinates in A's cokernel.
  std::vector<Coeff> cokernel_coords(std::span<const Coeff> x, const Field& field) const;
  // y with A y = x, or nullopt if x is not in the column space.
  std::optional<std::vector<Coeff>> solve(std::span<const Coeff> x, const Field& field) const;
};
ColumnSpace column_space(const DenseMatrix& a, const Field& field);

}  // namespace mvph
