#pragma once

#include <cstddef>
#include <vector>

#include "hmg/field.hpp"

namespace hmg {

/// Row-major dense complex matrix. Used for coarsest-level solves and as the
/// explicit-assembly counterpart of the matrix-free operators.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Complex(0.0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Field apply(const Field& x) const;
  DenseMatrix transposed() const;

  static DenseMatrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> a_;
};

/// LU factorization with partial pivoting. Throws SingularMatrixError when a
/// pivot column is numerically zero.
class DenseLu {
 public:
  explicit DenseLu(DenseMatrix a);

  std::size_t size() const { return lu_.rows(); }
  void solve_in_place(Field& b) const;
  Field solve(Field b) const;

 private:
  DenseMatrix lu_;
  std::vector<int> piv_;
};

}  // namespace hmg
