#ifndef GENPOS_MATRIX_HPP
#define GENPOS_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace genpos {

/// Dense row-major matrix over an exact field.  The field object travels
/// with the matrix so prime-field elements can stay plain residues.
template <class F>
class Matrix {
 public:
  using Element = typename F::Element;

  Matrix(const F& field, size_t rows, size_t cols)
      : field_(field), rows_(rows), cols_(cols), a_(rows * cols, field.zero()) {}

  static Matrix identity(const F& field, size_t n) {
    Matrix m(field, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }

  const F& field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Element& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const Element& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

  void swap_rows(size_t i, size_t j) {
    if (i == j) return;
    for (size_t c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
  }

  /// Appends the rows of `other` (same field and column count).
  void stack(const Matrix& other) {
    if (other.cols_ != cols_) throw std::invalid_argument("Matrix::stack: column count mismatch");
    if (!(other.field_ == field_)) throw std::invalid_argument("Matrix::stack: field mismatch");
    a_.insert(a_.end(), other.a_.begin(), other.a_.end());
    rows_ += other.rows_;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r)
      for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
  }

  bool operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) return false;
    for (size_t i = 0; i < a_.size(); ++i)
      if (!field_.eq(a_[i], o.a_[i])) return false;
    return true;
  }

 private:
  F field_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Element> a_;
};

template <class F>
struct Echelon {
  Matrix<F> mat;                  // reduced row echelon form
  std::vector<size_t> pivot_cols; // strictly increasing
};

/// Reduced row echelon form with row swaps onto the first nonzero pivot
/// in each column.  Exact arithmetic; deterministic.
template <class F>
Echelon<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t pr = r;
    while (pr < m.rows() && f.is_zero(m.at(pr, c))) ++pr;
    if (pr == m.rows()) continue;
    m.swap_rows(r, pr);
    typename F::Element piv_inv = f.inv(m.at(r, c));
    for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = f.mul(m.at(r, j), piv_inv);
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m.at(i, c))) continue;
      typename F::Element factor = m.at(i, c);
      for (size_t j = c; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Exact rank via forward elimination (no back-substitution).
template <class F>
size_t rank(Matrix<F> m) {
  const F& f = m.field();
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t pr = r;
    while (pr < m.rows() && f.is_zero(m.at(pr, c))) ++pr;
    if (pr == m.rows()) continue;
    m.swap_rows(r, pr);
    typename F::Element piv_inv = f.inv(m.at(r, c));
    for (size_t i = r + 1; i < m.rows(); ++i) {
      if (f.is_zero(m.at(i, c))) continue;
      typename F::Element factor = f.mul(m.at(i, c), piv_inv);
      for (size_t j = c; j < m.cols(); ++j) m.at(i, j) = f.sub(m.at(i, j), f.mul(factor, m.at(r, j)));
    }
    ++r;
  }
  return r;
}

/// Basis of {v : M v^T = 0} as a (cols - rank) x cols matrix in the
/// standard reduced-echelon parametrization: one row per free column,
/// unit entry there, pivot entries filled from the RREF.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  Echelon<F> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t c : e.pivot_cols) is_pivot[c] = true;
  size_t nfree = m.cols() - e.pivot_cols.size();
  Matrix<F> out(f, nfree, m.cols());
  size_t row = 0;
  for (size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    out.at(row, c) = f.one();
    for (size_t i = 0; i < e.pivot_cols.size(); ++i) out.at(row, e.pivot_cols[i]) = f.neg(e.mat.at(i, c));
    ++row;
  }
  return out;
}

/// Dimension of the span of the rows.
template <class F>
size_t span_dim(const Matrix<F>& m) {
  return rank(m);
}

}  // namespace genpos

#endif  // GENPOS_MATRIX_HPP
