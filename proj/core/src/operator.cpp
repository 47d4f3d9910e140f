#include "hmg/operator.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hmg {

Complex PerturbationScheme::laplacian_factor() const {
  if (variant == Variant::Csg && theta != 0.0) return std::polar(1.0, -theta);
  return Complex(1.0);
}

Complex PerturbationScheme::wavenumber_factor() const {
  if (variant == Variant::Csl && theta != 0.0) return std::polar(1.0, theta);
  return Complex(1.0);
}

WavenumberField inject_to_coarse(const WavenumberField& fine_k2, const Grid& fine,
                                 const Grid& coarse) {
  if (fine_k2.is_constant()) return fine_k2;

  const int d = coarse.dim();
  std::array<int, 3> uc = {1, 1, 1};
  std::array<int, 3> uf = {1, 1, 1};
  for (int a = 0; a < d; ++a) {
    uc[a] = coarse.axes[a].unknown_count();
    uf[a] = fine.axes[a].unknown_count();
  }

  std::vector<double> values(coarse.unknown_count());
  std::size_t idx = 0;
  for (int i2 = 0; i2 < uc[2]; ++i2)
    for (int i1 = 0; i1 < uc[1]; ++i1)
      for (int i0 = 0; i0 < uc[0]; ++i0) {
        // Coarse unknown j sits on fine node 2(j+1), i.e. fine unknown 2j+1.
        const std::size_t fi1 = d > 1 ? static_cast<std::size_t>(2 * i1 + 1) : 0;
        const std::size_t fi2 = d > 2 ? static_cast<std::size_t>(2 * i2 + 1) : 0;
        const std::size_t f =
            static_cast<std::size_t>(2 * i0 + 1) +
            static_cast<std::size_t>(uf[0]) * (fi1 + static_cast<std::size_t>(uf[1]) * fi2);
        values[idx++] = fine_k2.values()[f];
      }
  return WavenumberField::sampled(std::move(values));
}

LevelOperator::LevelOperator(std::shared_ptr<const Grid> grid, WavenumberField k2,
                             PerturbationScheme scheme, int level_index, Complex rhs_scale)
    : grid_(std::move(grid)),
      k2_(std::move(k2)),
      scheme_(scheme),
      level_index_(level_index),
      rhs_scale_(rhs_scale) {
  size_ = grid_->unknown_count();
  if (!k2_.is_constant() && k2_.values().size() != size_)
    throw std::invalid_argument("LevelOperator: k2 samples do not match unknown count");

  lap_factor_ = scheme_.laplacian_factor();
  k2_factor_ = scheme_.wavenumber_factor();

  stencils_.resize(grid_->axes.size());
  for (std::size_t a = 0; a < grid_->axes.size(); ++a) {
    const Axis& ax = grid_->axes[a];
    const int u = ax.unknown_count();
    AxisStencil& st = stencils_[a];
    st.west.resize(u);
    st.center.resize(u);
    st.east.resize(u);
    for (int i = 0; i < u; ++i) {
      const Complex hm = ax.spacings[static_cast<std::size_t>(i)];
      const Complex hp = ax.spacings[static_cast<std::size_t>(i) + 1];
      const Complex hs = hm + hp;
      st.west[i] = -2.0 / (hm * hs);
      st.east[i] = -2.0 / (hp * hs);
      st.center[i] = 2.0 / (hm * hp);
    }
  }

  const int d = grid_->dim();
  std::array<int, 3> n = {1, 1, 1};
  for (int a = 0; a < d; ++a) n[a] = grid_->axes[a].unknown_count();
  diag_.resize(size_);
  std::size_t idx = 0;
  for (int i2 = 0; i2 < n[2]; ++i2)
    for (int i1 = 0; i1 < n[1]; ++i1) {
      Complex cross = 0.0;
      if (d > 1) cross += stencils_[1].center[i1];
      if (d > 2) cross += stencils_[2].center[i2];
      for (int i0 = 0; i0 < n[0]; ++i0, ++idx)
        diag_[idx] = lap_factor_ * (stencils_[0].center[i0] + cross) -
                     k2_factor_ * k2_.at(idx);
    }
}

void LevelOperator::apply(const Field& u, Field& out) const {
  require_size(u, size_, "LevelOperator::apply");
  out.resize(size_);

  const int d = grid_->dim();
  std::array<int, 3> n = {1, 1, 1};
  for (int a = 0; a < d; ++a) n[a] = grid_->axes[a].unknown_count();
  const std::size_t s1 = static_cast<std::size_t>(n[0]);
  const std::size_t s2 = s1 * static_cast<std::size_t>(n[1]);

  const double* k2v = k2_.is_constant() ? nullptr : k2_.values().data();
  const double k2c = k2_.constant_value();
  const Complex lf = lap_factor_;
  const Complex kf = k2_factor_;

  const AxisStencil& st0 = stencils_[0];
  for (int i2 = 0; i2 < n[2]; ++i2) {
    const bool down2 = i2 > 0, up2 = i2 < n[2] - 1;
    for (int i1 = 0; i1 < n[1]; ++i1) {
      const bool down1 = i1 > 0, up1 = i1 < n[1] - 1;
      const std::size_t base = static_cast<std::size_t>(i1) * s1 + static_cast<std::size_t>(i2) * s2;
      Complex cross = 0.0;
      if (d > 1) cross += stencils_[1].center[i1];
      if (d > 2) cross += stencils_[2].center[i2];
      for (int i0 = 0; i0 < n[0]; ++i0) {
        const std::size_t idx = base + static_cast<std::size_t>(i0);
        Complex acc = (st0.center[i0] + cross) * u[idx];
        if (i0 > 0) acc += st0.west[i0] * u[idx - 1];
        if (i0 < n[0] - 1) acc += st0.east[i0] * u[idx + 1];
        if (d > 1) {
          if (down1) acc += stencils_[1].west[i1] * u[idx - s1];
          if (up1) acc += stencils_[1].east[i1] * u[idx + s1];
        }
        if (d > 2) {
          if (down2) acc += stencils_[2].west[i2] * u[idx - s2];
          if (up2) acc += stencils_[2].east[i2] * u[idx + s2];
        }
        const double k2 = k2v ? k2v[idx] : k2c;
        out[idx] = lf * acc - kf * (k2 * u[idx]);
      }
    }
  }
}

Field LevelOperator::apply(const Field& u) const {
  Field out;
  apply(u, out);
  return out;
}

void LevelOperator::residual(const Field& u, const Field& b, Field& out) const {
  require_size(b, size_, "LevelOperator::residual");
  apply(u, out);
  for (std::size_t i = 0; i < size_; ++i) out[i] = b[i] - out[i];
}

Field LevelOperator::residual(const Field& u, const Field& b) const {
  Field out;
  residual(u, b, out);
  return out;
}

DenseMatrix LevelOperator::dense_matrix(std::size_t cap) const {
  if (size_ > cap)
    throw ConfigError("dense_matrix: unknown count " + std::to_string(size_) +
                      " exceeds cap " + std::to_string(cap));
  DenseMatrix m(size_, size_);
  Field e(size_, Complex(0.0));
  Field col;
  for (std::size_t j = 0; j < size_; ++j) {
    e[j] = 1.0;
    apply(e, col);
    for (std::size_t i = 0; i < size_; ++i) m(i, j) = col[i];
    e[j] = 0.0;
  }
  return m;
}

}  // namespace hmg
