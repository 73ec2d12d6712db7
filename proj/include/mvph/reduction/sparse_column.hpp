#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "mvph/core/field.hpp"

namespace mvph {

struct Entry {
  std::uint32_t row;
  Coeff value;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Nonzero entries sorted by row.
using SparseColumn = std::vector<Entry>;

struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<SparseColumn> columns;

  std::size_t cols() const { return columns.size(); }
  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

inline std::optional<std::uint32_t> low(const SparseColumn& col) {
  if (col.empty()) return std::nullopt;
  return col.back().row;
}

// target += c * source. `scratch` avoids reallocating on hot paths.
void column_axpy(SparseColumn& target, Coeff c, const SparseColumn& source, const Field& field,
                 SparseColumn& scratch);
void column_axpy(SparseColumn& target, Coeff c, const SparseColumn& source, const Field& field);

Coeff column_entry(const SparseColumn& col, std::uint32_t row);

SparseMatrix identity_matrix(std::size_t n);
SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const Field& field);
bool is_zero_matrix(const SparseMatrix& m);

}  // namespace mvph
