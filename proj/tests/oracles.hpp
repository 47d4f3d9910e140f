#pragma once

// Test-only verification machinery, kept independent of the solver paths it
// checks: analytic Dirichlet eigenmodes, brute-force transfer stencils and
// densely assembled two-grid operators.

#include <cmath>
#include <numbers>
#include <random>

#include "hmg/dense.hpp"
#include "hmg/field.hpp"
#include "hmg/grid.hpp"
#include "hmg/operator.hpp"
#include "hmg/transfer.hpp"

namespace oracle {

/// Eigenvector w_l of the 1D Dirichlet Laplacian on n intervals, entries
/// sin(l j pi / n) at the unknowns j = 1..n-1.
inline hmg::Field dirichlet_mode(int l, int n) {
  hmg::Field w(static_cast<std::size_t>(n) - 1);
  for (int j = 1; j < n; ++j)
    w[static_cast<std::size_t>(j) - 1] = std::sin(l * j * std::numbers::pi / n);
  return w;
}

/// Full weighting of a 1D field written out directly, no library calls.
inline hmg::Field full_weighting_1d(const hmg::Field& fine) {
  const std::size_t nc = (fine.size() + 1) / 2 - 1;
  hmg::Field coarse(nc);
  for (std::size_t j = 0; j < nc; ++j)
    coarse[j] = 0.25 * fine[2 * j] + 0.5 * fine[2 * j + 1] + 0.25 * fine[2 * j + 2];
  return coarse;
}

inline hmg::Field random_field(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  hmg::Field f(n);
  for (auto& v : f) v = hmg::Complex(dist(rng), dist(rng));
  return f;
}

inline hmg::DenseMatrix matmul(const hmg::DenseMatrix& a, const hmg::DenseMatrix& b) {
  hmg::DenseMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const hmg::Complex aik = a(i, k);
      if (aik == hmg::Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline double max_abs_diff(const hmg::DenseMatrix& a, const hmg::DenseMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline hmg::DenseMatrix dense_restriction(const hmg::Grid& fine, const hmg::Grid& coarse) {
  const std::size_t nf = fine.unknown_count();
  const std::size_t nc = coarse.unknown_count();
  hmg::DenseMatrix r(nc, nf);
  hmg::Field e(nf, hmg::Complex(0.0));
  for (std::size_t j = 0; j < nf; ++j) {
    e[j] = 1.0;
    const hmg::Field col = hmg::restrict_full_weighting(e, fine, coarse);
    for (std::size_t i = 0; i < nc; ++i) r(i, j) = col[i];
    e[j] = 0.0;
  }
  return r;
}

inline hmg::DenseMatrix dense_interpolation(const hmg::Grid& coarse, const hmg::Grid& fine) {
  const std::size_t nf = fine.unknown_count();
  const std::size_t nc = coarse.unknown_count();
  hmg::DenseMatrix p(nf, nc);
  hmg::Field e(nc, hmg::Complex(0.0));
  for (std::size_t j = 0; j < nc; ++j) {
    e[j] = 1.0;
    const hmg::Field col = hmg::interpolate_linear(e, coarse, fine);
    for (std::size_t i = 0; i < nf; ++i) p(i, j) = col[i];
    e[j] = 0.0;
  }
  return p;
}

/// Densely assembled two-grid error propagation I - P (A_c)^{-1} c R A_f
/// with exact coarse solve and no smoothing.
inline hmg::DenseMatrix dense_two_grid(const hmg::LevelOperator& fine_op,
                                       const hmg::LevelOperator& coarse_op,
                                       hmg::Complex c) {
  const hmg::Grid& fg = fine_op.grid();
  const hmg::Grid& cg = coarse_op.grid();
  const hmg::DenseMatrix af = fine_op.dense_matrix();
  const hmg::DenseLu ac(coarse_op.dense_matrix());
  const hmg::DenseMatrix r = dense_restriction(fg, cg);
  const hmg::DenseMatrix p = dense_interpolation(cg, fg);

  const std::size_t nf = fg.unknown_count();
  hmg::DenseMatrix tg = hmg::DenseMatrix::identity(nf);
  for (std::size_t j = 0; j < nf; ++j) {
    hmg::Field col(nf, hmg::Complex(0.0));
    for (std::size_t i = 0; i < nf; ++i) col[i] = af(i, j);
    hmg::Field rc = r.apply(col);
    hmg::scal(c, rc);
    const hmg::Field ec = ac.solve(rc);
    const hmg::Field corr = p.apply(ec);
    for (std::size_t i = 0; i < nf; ++i) tg(i, j) -= corr[i];
  }
  return tg;
}

/// Eigenvalue of `matrix` for a known eigenvector: Rayleigh-style projection
/// (w, M w) / (w, w).
inline hmg::Complex projected_eigenvalue(const hmg::DenseMatrix& m, const hmg::Field& w) {
  const hmg::Field mw = m.apply(w);
  return hmg::dot(w, mw) / hmg::dot(w, w);
}

}  // namespace oracle
