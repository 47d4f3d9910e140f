#include "hmg/transfer.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace hmg {

namespace {

void check_pair(const Grid& fine, const Grid& coarse, const char* where) {
  if (fine.dim() != coarse.dim())
    throw std::invalid_argument(std::string(where) + ": dimension mismatch");
  for (int a = 0; a < fine.dim(); ++a) {
    if (coarse.axes[a].total_points() * 2 != fine.axes[a].total_points())
      throw std::invalid_argument(std::string(where) +
                                  ": coarse grid is not the 2:1 coarsening of the fine grid");
  }
}

std::array<int, 3> unknown_extents(const Grid& g) {
  std::array<int, 3> n = {1, 1, 1};
  for (int a = 0; a < g.dim(); ++a) n[a] = g.axes[a].unknown_count();
  return n;
}

// One full-weighting pass along `axis`; the other axes keep extents `ext`.
Field restrict_axis(const Field& in, std::array<int, 3> ext, int axis) {
  const int nf = ext[axis];
  const int nc = (nf + 1) / 2 - 1;  // fine unknowns 2j, 2j+1, 2j+2 -> coarse j
  std::array<int, 3> out_ext = ext;
  out_ext[axis] = nc;

  const std::size_t in_s1 = static_cast<std::size_t>(ext[0]);
  const std::size_t in_s2 = in_s1 * static_cast<std::size_t>(ext[1]);
  const std::array<std::size_t, 3> in_stride = {1, in_s1, in_s2};

  Field out(static_cast<std::size_t>(out_ext[0]) * out_ext[1] * out_ext[2]);
  std::size_t o = 0;
  for (int i2 = 0; i2 < out_ext[2]; ++i2)
    for (int i1 = 0; i1 < out_ext[1]; ++i1)
      for (int i0 = 0; i0 < out_ext[0]; ++i0, ++o) {
        std::array<int, 3> c = {i0, i1, i2};
        c[axis] = 2 * c[axis];  // fine index of the left neighbor
        const std::size_t base = static_cast<std::size_t>(c[0]) +
                                 in_s1 * static_cast<std::size_t>(c[1]) +
                                 in_s2 * static_cast<std::size_t>(c[2]);
        const std::size_t s = in_stride[axis];
        out[o] = 0.25 * in[base] + 0.5 * in[base + s] + 0.25 * in[base + 2 * s];
      }
  return out;
}

// One linear-interpolation pass along `axis` (coarse extent -> fine extent).
Field interpolate_axis(const Field& in, std::array<int, 3> ext, int axis, int fine_extent) {
  const int nc = ext[axis];
  std::array<int, 3> out_ext = ext;
  out_ext[axis] = fine_extent;

  const std::size_t in_s1 = static_cast<std::size_t>(ext[0]);
  const std::size_t in_s2 = in_s1 * static_cast<std::size_t>(ext[1]);

  Field out(static_cast<std::size_t>(out_ext[0]) * out_ext[1] * out_ext[2]);
  auto at = [&](std::array<int, 3> c) {
    return in[static_cast<std::size_t>(c[0]) + in_s1 * static_cast<std::size_t>(c[1]) +
              in_s2 * static_cast<std::size_t>(c[2])];
  };
  std::size_t o = 0;
  for (int i2 = 0; i2 < out_ext[2]; ++i2)
    for (int i1 = 0; i1 < out_ext[1]; ++i1)
      for (int i0 = 0; i0 < out_ext[0]; ++i0, ++o) {
        std::array<int, 3> c = {i0, i1, i2};
        const int f = c[axis];
        if (f % 2 == 1) {  // coincident with coarse unknown (f-1)/2
          c[axis] = (f - 1) / 2;
          out[o] = at(c);
        } else {  // midpoint between coarse f/2 - 1 and f/2, Dirichlet ends zero
          Complex v = 0.0;
          if (f / 2 < nc) {
            c[axis] = f / 2;
            v += at(c);
          }
          if (f / 2 >= 1) {
            c[axis] = f / 2 - 1;
            v += at(c);
          }
          out[o] = 0.5 * v;
        }
      }
  return out;
}

}  // namespace

Field restrict_full_weighting(const Field& fine, const Grid& fine_grid,
                              const Grid& coarse_grid) {
  check_pair(fine_grid, coarse_grid, "restrict_full_weighting");
  require_size(fine, fine_grid.unknown_count(), "restrict_full_weighting");

  Field cur = fine;
  std::array<int, 3> ext = unknown_extents(fine_grid);
  for (int a = 0; a < fine_grid.dim(); ++a) {
    cur = restrict_axis(cur, ext, a);
    ext[a] = coarse_grid.axes[a].unknown_count();
  }
  return cur;
}

Field interpolate_linear(const Field& coarse, const Grid& coarse_grid,
                         const Grid& fine_grid) {
  check_pair(fine_grid, coarse_grid, "interpolate_linear");
  require_size(coarse, coarse_grid.unknown_count(), "interpolate_linear");

  Field cur = coarse;
  std::array<int, 3> ext = unknown_extents(coarse_grid);
  for (int a = 0; a < coarse_grid.dim(); ++a) {
    cur = interpolate_axis(cur, ext, a, fine_grid.axes[a].unknown_count());
    ext[a] = fine_grid.axes[a].unknown_count();
  }
  return cur;
}

Field scale_rhs(Field r_coarse, Complex c) {
  scal(c, r_coarse);
  return r_coarse;
}

}  // namespace hmg
