#pragma once

#include "hmg/field.hpp"
#include "hmg/grid.hpp"

namespace hmg {

/// Tensor-product full weighting onto the coarsened grid: 1D weights
/// (1/4, 1/2, 1/4) centered on coincident nodes, Dirichlet neighbors zero.
Field restrict_full_weighting(const Field& fine, const Grid& fine_grid,
                              const Grid& coarse_grid);

/// Tensor-product (bi-/tri-)linear interpolation: coincident nodes copy,
/// midpoints average their coarse neighbors, Dirichlet neighbors zero.
Field interpolate_linear(const Field& coarse, const Grid& coarse_grid,
                         const Grid& fine_grid);

/// Entrywise multiply by the coarse right-hand-side scaling factor.
Field scale_rhs(Field r_coarse, Complex c);

}  // namespace hmg
