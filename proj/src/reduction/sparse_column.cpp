#include "mvph/reduction/sparse_column.hpp"

#include <algorithm>

#include "mvph/core/error.hpp"

namespace mvph {

void column_axpy(SparseColumn& target, Coeff c, const SparseColumn& source, const Field& field,
                 SparseColumn& scratch) {
  c %= field.modulus();
  if (c == 0 || source.empty()) return;
  scratch.clear();
  scratch.reserve(target.size() + source.size());
  auto a = target.begin();
  auto b = source.begin();
  while (a != target.end() || b != source.end()) {
    if (b == source.end() || (a != target.end() && a->row < b->row)) {
      scratch.push_back(*a++);
    } else if (a == target.end() || b->row < a->row) {
      scratch.push_back({b->row, field.mul(c, b->value)});
      ++b;
    } else {
      const Coeff v = field.add(a->value, field.mul(c, b->value));
      if (v != 0) scratch.push_back({a->row, v});
      ++a;
      ++b;
    }
  }
  target.swap(scratch);
}

void column_axpy(SparseColumn& target, Coeff c, const SparseColumn& source, const Field& field) {
  SparseColumn scratch;
  column_axpy(target, c, source, field, scratch);
}

Coeff column_entry(const SparseColumn& col, std::uint32_t row) {
  auto it = std::lower_bound(col.begin(), col.end(), row,
                             [](const Entry& e, std::uint32_t r) { return e.row < r; });
  return (it != col.end() && it->row == row) ? it->value : 0;
}

SparseMatrix identity_matrix(std::size_t n) {
  SparseMatrix m;
  m.rows = n;
  m.columns.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.columns[i] = {{static_cast<std::uint32_t>(i), 1}};
  return m;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b, const Field& field) {
  if (a.cols() != b.rows) throw DataError("matrix product shape mismatch");
  SparseMatrix out;
  out.rows = a.rows;
  out.columns.resize(b.cols());
  SparseColumn scratch;
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (const Entry& e : b.columns[j])
      column_axpy(out.columns[j], e.value, a.columns[e.row], field, scratch);
  return out;
}

bool is_zero_matrix(const SparseMatrix& m) {
  return std::all_of(m.columns.begin(), m.columns.end(),
                     [](const SparseColumn& c) { return c.empty(); });
}

}  // namespace mvph
