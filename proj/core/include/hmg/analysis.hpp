#pragma once

#include <vector>

#include "hmg/field.hpp"
#include "hmg/operator.hpp"

namespace hmg {

/// Dirichlet eigenmode index on a 1D axis with n intervals: modes l = 1..n-1,
/// smooth for l < n/2, with oscillatory companion l' = n - l.
struct ModeIndex {
  int l = 1;
  int n = 2;

  ModeIndex(int l_, int n_);
  bool is_smooth() const { return l < n / 2; }
  int companion() const { return n - l; }
};

/// Eigenvalue (4d/h^2) sin^2(l pi / 2n) of the d-dimensional discrete
/// Dirichlet Laplacian for the mode with index l on every axis.
double laplacian_eigenvalue(int l, int n, double h, int d);

/// Eigenvalue of the perturbed Helmholtz operator for Laplacian eigenvalue
/// lambda_L: lambda_L - k^2 e^{i theta} (Csl) or lambda_L e^{-i theta} - k^2 (Csg).
Complex scheme_eigenvalue(double lambda_L, double k, const PerturbationScheme& scheme);

/// Exact 2x2 mixing of the pair (w_l, w_{l'}) under the two-grid correction
/// operator with exact coarse solve and no smoothing, on a unit-length 1D
/// Dirichlet grid with n fine intervals. `resonant` flags a coarse eigenvalue
/// of exactly zero (infinite amplification, reported rather than thrown).
struct TwoGridModeResponse {
  Complex smooth_to_smooth{0.0};
  Complex smooth_to_osc{0.0};
  Complex osc_to_smooth{0.0};
  Complex osc_to_osc{0.0};
  bool resonant = false;
};

TwoGridModeResponse two_grid_amplification(int l, int n, const PerturbationScheme& fine,
                                           const PerturbationScheme& coarse, double k);

/// Perturbation-error eigenvalue of (A~^{2h})^{-1} (c A^{2h} - A~^{2h}) for a
/// coarse Laplacian eigenvalue lambda_L. Csl uses c = 1, Csg uses
/// c = e^{-i dtheta}; the two closed forms agree identically. A denominator
/// modulus below 1e-14 is reported as resonant via an infinite value.
Complex gamma_from_lambda(double lambda_L, double k, double dtheta, Variant variant);

/// gamma for coarse mode l on a grid with n_coarse intervals of spacing
/// h_coarse in d dimensions.
Complex gamma_l(int l, int n_coarse, double h_coarse, int d, double k, double dtheta,
                Variant variant);

struct GammaEntry {
  int index = 0;  // flattened 1-based mode index
  Complex gamma{0.0};
};

/// Full gamma table for the coarse level below a fine unit-domain grid with n
/// intervals per axis. d = 2 enumerates the Dirichlet tensor modes
/// (l1, l2) in 1..n/2-1 with lambda = lambda_{l1} + lambda_{l2}.
std::vector<GammaEntry> gamma_spectrum_table(int n, double k, double dtheta, int d,
                                             Variant variant);

}  // namespace hmg
