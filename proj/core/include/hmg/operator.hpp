#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "hmg/dense.hpp"
#include "hmg/field.hpp"
#include "hmg/grid.hpp"

namespace hmg {

enum class Variant { Unperturbed, Csl, Csg };

/// Perturbation applied to one level's Helmholtz operator. The magnitude of
/// the shift/rotation is fixed to 1, so only the angle is stored:
///   Csl(theta):  -Laplace - k^2 e^{i theta}
///   Csg(theta):  -Laplace e^{-i theta} - k^2
/// Unperturbed, Csl(0) and Csg(0) coincide as operators.
struct PerturbationScheme {
  Variant variant = Variant::Unperturbed;
  double theta = 0.0;

  static PerturbationScheme unperturbed() { return {Variant::Unperturbed, 0.0}; }
  static PerturbationScheme csl(double theta) { return {Variant::Csl, theta}; }
  static PerturbationScheme csg(double theta) { return {Variant::Csg, theta}; }

  /// Factor multiplying the assembled Laplacian part (e^{-i theta} for Csg).
  Complex laplacian_factor() const;
  /// Factor multiplying the k^2 term (e^{i theta} for Csl).
  Complex wavenumber_factor() const;
};

/// Real k^2 samples, one per grid unknown; constant fields broadcast a scalar.
class WavenumberField {
 public:
  static WavenumberField constant(double k2) {
    WavenumberField f;
    f.scalar_ = k2;
    return f;
  }
  static WavenumberField sampled(std::vector<double> values) {
    WavenumberField f;
    f.values_ = std::move(values);
    return f;
  }

  bool is_constant() const { return values_.empty(); }
  double constant_value() const { return scalar_; }
  const std::vector<double>& values() const { return values_; }

  double at(std::size_t i) const { return values_.empty() ? scalar_ : values_[i]; }

 private:
  double scalar_ = 0.0;
  std::vector<double> values_;
};

/// Coarse k^2 by injection: samples the fine field at coincident nodes.
WavenumberField inject_to_coarse(const WavenumberField& fine_k2, const Grid& fine,
                                 const Grid& coarse);

/// Matrix-free second-order finite-difference Helmholtz operator on one grid
/// level. The Laplacian stencil handles nonuniform complex spacings: along
/// each axis the neighbor coefficients are -2/(h-(h-+h+)) and -2/(h+(h-+h+)),
/// the center contribution is 2/(h- h+), summed over axes; Dirichlet
/// neighbors contribute zero. Immutable; apply/residual are pure.
class LevelOperator {
 public:
  LevelOperator(std::shared_ptr<const Grid> grid, WavenumberField k2,
                PerturbationScheme scheme, int level_index = 0,
                Complex rhs_scale = Complex(1.0));

  const Grid& grid() const { return *grid_; }
  std::shared_ptr<const Grid> grid_ptr() const { return grid_; }
  const WavenumberField& k2() const { return k2_; }
  const PerturbationScheme& scheme() const { return scheme_; }
  int level_index() const { return level_index_; }
  Complex rhs_scale() const { return rhs_scale_; }
  std::size_t size() const { return size_; }

  void apply(const Field& u, Field& out) const;
  Field apply(const Field& u) const;

  /// b - A u.
  void residual(const Field& u, const Field& b, Field& out) const;
  Field residual(const Field& u, const Field& b) const;

  const Field& diagonal() const { return diag_; }

  /// Explicit matrix with column j = apply(e_j). Guarded by `cap` on the
  /// unknown count; intended for coarsest levels and verification.
  DenseMatrix dense_matrix(std::size_t cap = 20000) const;

 private:
  struct AxisStencil {
    std::vector<Complex> west;
    std::vector<Complex> center;
    std::vector<Complex> east;
  };

  std::shared_ptr<const Grid> grid_;
  WavenumberField k2_;
  PerturbationScheme scheme_;
  int level_index_ = 0;
  Complex rhs_scale_{1.0};
  std::size_t size_ = 0;
  std::vector<AxisStencil> stencils_;
  Complex lap_factor_{1.0};
  Complex k2_factor_{1.0};
  Field diag_;  // precomputed; smoothers read it every relaxation
};

}  // namespace hmg
