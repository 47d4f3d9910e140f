#include "hmg/dense.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace hmg {

Field DenseMatrix::apply(const Field& x) const {
  require_size(x, cols_, "DenseMatrix::apply");
  Field y(rows_, Complex(0.0));
  for (std::size_t i = 0; i < rows_; ++i) {
    Complex s = 0.0;
    const Complex* row = &a_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseLu::DenseLu(DenseMatrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols())
    throw std::invalid_argument("DenseLu: matrix must be square");
  const std::size_t n = lu_.rows();
  piv_.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (!(best > 0.0) || !std::isfinite(best))
      throw SingularMatrixError("DenseLu: zero pivot at column " + std::to_string(k));
    piv_[k] = static_cast<int>(p);
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));

    const Complex inv_pivot = 1.0 / lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex m = lu_(i, k) * inv_pivot;
      lu_(i, k) = m;
      if (m != Complex(0.0))
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= m * lu_(k, j);
    }
  }
}

void DenseLu::solve_in_place(Field& b) const {
  const std::size_t n = lu_.rows();
  require_size(b, n, "DenseLu::solve");
  // All interchanges first; the stored L is the fully permuted factor.
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t p = static_cast<std::size_t>(piv_[k]);
    if (p != k) std::swap(b[k], b[p]);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i) b[i] -= lu_(i, k) * b[k];
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = k + 1; j < n; ++j) b[k] -= lu_(k, j) * b[j];
    b[k] /= lu_(k, k);
  }
}

Field DenseLu::solve(Field b) const {
  solve_in_place(b);
  return b;
}

}  // namespace hmg
