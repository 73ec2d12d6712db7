#include "mvph/reduction/dense_echelon.hpp"

#include <utility>

#include "mvph/core/error.hpp"
#include "mvph/core/homology_solver.hpp"

namespace mvph {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

std::vector<Coeff> DenseMatrix::apply(std::span<const Coeff> x, const Field& field) const {
  if (x.size() != cols_) throw DataError("matrix-vector shape mismatch");
  std::vector<Coeff> y(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (x[c] != 0) y[r] = field.add(y[r], field.mul(at(r, c), x[c]));
  return y;
}

namespace {

void swap_rows(DenseMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(a, c), m.at(b, c));
}

void scale_row(DenseMatrix& m, std::size_t r, Coeff s, const Field& field) {
  for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = field.mul(m.at(r, c), s);
}

// row target += s * row source
void add_row(DenseMatrix& m, std::size_t target, std::size_t source, Coeff s,
             const Field& field) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (m.at(source, c) != 0)
      m.at(target, c) = field.add(m.at(target, c), field.mul(s, m.at(source, c)));
}

}  // namespace

RowEchelon row_echelon(const DenseMatrix& a, const Field& field) {
  RowEchelon out{a, DenseMatrix::identity(a.rows()), {}};
  DenseMatrix& r = out.reduced;
  DenseMatrix& e = out.transform;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < r.cols() && rank < r.rows(); ++c) {
    std::size_t p = rank;
    while (p < r.rows() && r.at(p, c) == 0) ++p;
    if (p == r.rows()) continue;
    swap_rows(r, p, rank);
    swap_rows(e, p, rank);
    const Coeff s = field.inv(r.at(rank, c));
    scale_row(r, rank, s, field);
    scale_row(e, rank, s, field);
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == rank || r.at(i, c) == 0) continue;
      const Coeff f = field.neg(r.at(i, c));
      add_row(r, i, rank, f, field);
      add_row(e, i, rank, f, field);
    }
    out.pivot_cols.push_back(c);
    ++rank;
  }
  return out;
}

NullSpace null_space(const RowEchelon& echelon, const Field& field) {
  const DenseMatrix& r = echelon.reduced;
  NullSpace ns;
  std::vector<bool> is_pivot(r.cols(), false);
  for (std::size_t c : echelon.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < r.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Coeff> v(r.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < echelon.rank(); ++i)
      v[echelon.pivot_cols[i]] = field.neg(r.at(i, f));
    ns.free_cols.push_back(f);
    ns.basis.push_back(std::move(v));
  }
  return ns;
}

ColumnSpace column_space(const DenseMatrix& a, const Field& field) {
  const RowEchelon t = row_echelon(a.transposed(), field);
  ColumnSpace cs;
  cs.ambient = a.rows();
  cs.domain = a.cols();
  cs.pivot_rows = t.pivot_cols;
  std::vector<bool> is_pivot(a.rows(), false);
  for (std::size_t p : cs.pivot_rows) is_pivot[p] = true;
  for (std::size_t q = 0; q < a.rows(); ++q)
    if (!is_pivot[q]) cs.free_rows.push_back(q);
  for (std::size_t i = 0; i < t.rank(); ++i) {
    const auto b = t.reduced.row(i);
    const auto y = t.transform.row(i);
    cs.basis.emplace_back(b.begin(), b.end());
    cs.preimages.emplace_back(y.begin(), y.end());
  }
  return cs;
}

std::vector<Coeff> ColumnSpace::residual(std::span<const Coeff> x, const Field& field) const {
  if (x.size() != ambient) throw DataError("vector length does not match the column space");
  std::vector<Coeff> out(x.begin(), x.end());
  for (std::size_t i = 0; i < pivot_rows.size(); ++i) {
    const Coeff s = x[pivot_rows[i]];
    if (s == 0) continue;
    for (std::size_t q = 0; q < ambient; ++q)
      out[q] = field.sub(out[q], field.mul(s, basis[i][q]));
  }
  return out;
}

std::vector<Coeff> ColumnSpace::cokernel_coords(std::span<const Coeff> x,
                                                const Field& field) const {
  const std::vector<Coeff> r = residual(x, field);
  std::vector<Coeff> out;
  out.reserve(free_rows.size());
  for (std::size_t q : free_rows) out.push_back(r[q]);
  return out;
}

std::optional<std::vector<Coeff>> ColumnSpace::solve(std::span<const Coeff> x,
                                                     const Field& field) const {
  if (!is_zero_vector(residual(x, field))) return std::nullopt;
  const std::size_t n = domain;
  std::vector<Coeff> y(n, 0);
  for (std::size_t i = 0; i < pivot_rows.size(); ++i) {
    const Coeff s = x[pivot_rows[i]];
    if (s == 0) continue;
    for (std::size_t c = 0; c < n; ++c) y[c] = field.add(y[c], field.mul(s, preimages[i][c]));
  }
  return y;
}

}  // namespace mvph
