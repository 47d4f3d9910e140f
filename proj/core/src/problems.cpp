#include "hmg/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>

namespace hmg {

namespace {

using RealPoint = std::array<double, 3>;

/// Evaluates fn at the real parts of the unknown node coordinates.
std::vector<double> sample_unknowns(const Grid& g,
                                    const std::function<double(const RealPoint&)>& fn) {
  std::array<int, 3> u = {1, 1, 1};
  for (int a = 0; a < g.dim(); ++a) u[a] = g.axes[a].unknown_count();

  std::vector<double> out(g.unknown_count());
  std::size_t idx = 0;
  RealPoint p = {0.0, 0.0, 0.0};
  for (int i2 = 0; i2 < u[2]; ++i2) {
    if (g.dim() > 2) p[2] = g.axes[2].unknown_node(i2).real();
    for (int i1 = 0; i1 < u[1]; ++i1) {
      if (g.dim() > 1) p[1] = g.axes[1].unknown_node(i1).real();
      for (int i0 = 0; i0 < u[0]; ++i0, ++idx) {
        p[0] = g.axes[0].unknown_node(i0).real();
        out[idx] = fn(p);
      }
    }
  }
  return out;
}

/// Unknown index of the interior node nearest to `target`, with each
/// coordinate pulled one grid line inside the interior so sources on ECS
/// faces land on an unknown away from the layer.
std::size_t nearest_interior_unknown(const Grid& g, const RealPoint& target) {
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (int a = 0; a < g.dim(); ++a) {
    const Axis& ax = g.axes[a];
    const double h = ax.interior_spacing;
    const double length = h * ax.interior_points;
    const double t = std::clamp(target[a], h, length - h);
    const long j = std::clamp(std::lround(t / h), 1L, static_cast<long>(ax.interior_points) - 1);
    const long node = ax.ecs_low_points + j;
    idx += stride * static_cast<std::size_t>(node - 1);  // unknown = node - 1
    stride *= static_cast<std::size_t>(ax.unknown_count());
  }
  return idx;
}

Field point_source(const Grid& g, const RealPoint& target) {
  Field rhs(g.unknown_count(), Complex(0.0));
  rhs[nearest_interior_unknown(g, target)] = 1.0;
  return rhs;
}

void add_resolution_warning(ProblemInstance& p) {
  if (p.under_resolved())
    p.warnings.push_back("k*h = " + std::to_string(p.kh_max) +
                         " exceeds " + std::to_string(kResolutionLimit) +
                         " (fewer than ~10 points per wavelength); convergence and "
                         "accuracy may degrade");
}

}  // namespace

ProblemInstance constant_k(double k, int n, ConstantKBc bc, double ecs_angle) {
  std::optional<EcsLayer> layer;
  if (bc == ConstantKBc::AllEcs) layer = EcsLayer{0, ecs_angle};
  const AxisSpec axis{n, 1.0, layer, layer};

  ProblemInstance p;
  p.grid = std::make_shared<const Grid>(build_grid({axis, axis}));
  p.k2 = WavenumberField::constant(k * k);
  p.rhs = point_source(*p.grid, {0.5, 0.5, 0.0});
  p.label = "constant-k";
  p.params = {{"k", k}, {"n", static_cast<double>(n)}};
  p.kh_max = std::abs(k) / n;
  add_resolution_warning(p);
  return p;
}

namespace {

double wedge_velocity(double x, double y) {
  if (y < x / 6.0 + 400.0) return 2000.0;
  if (y < -x / 3.0 + 800.0) return 1500.0;
  return 3000.0;
}

}  // namespace

ProblemInstance wedge_2d(double f, int nx, int ny, double ecs_angle) {
  const EcsLayer layer{0, ecs_angle};
  const AxisSpec x_axis{nx, 600.0, layer, layer};
  const AxisSpec y_axis{ny, 1000.0, layer, layer};

  ProblemInstance p;
  p.grid = std::make_shared<const Grid>(build_grid({x_axis, y_axis}));
  const double omega = 2.0 * std::numbers::pi * f;
  p.k2 = WavenumberField::sampled(sample_unknowns(*p.grid, [omega](const RealPoint& q) {
    const double c = wedge_velocity(q[0], q[1]);
    return (omega / c) * (omega / c);
  }));
  p.rhs = point_source(*p.grid, {300.0, 0.0, 0.0});
  p.label = "wedge2d";
  p.params = {{"f", f}, {"nx", static_cast<double>(nx)}, {"ny", static_cast<double>(ny)}};
  p.kh_max = (omega / 1500.0) * std::max(600.0 / nx, 1000.0 / ny);
  add_resolution_warning(p);
  return p;
}

ProblemInstance wedge_3d(double f, int nx, int ny, int nz, double ecs_angle) {
  const EcsLayer layer{0, ecs_angle};
  const AxisSpec x_axis{nx, 600.0, layer, layer};
  const AxisSpec y_axis{ny, 1000.0, layer, layer};
  const AxisSpec z_axis{nz, 600.0, layer, layer};

  ProblemInstance p;
  p.grid = std::make_shared<const Grid>(build_grid({x_axis, y_axis, z_axis}));
  const double omega = 2.0 * std::numbers::pi * f;
  p.k2 = WavenumberField::sampled(sample_unknowns(*p.grid, [omega](const RealPoint& q) {
    const double c = wedge_velocity(q[0], q[1]);  // independent of z
    return (omega / c) * (omega / c);
  }));
  p.rhs = point_source(*p.grid, {300.0, 0.0, 300.0});
  p.label = "wedge3d";
  p.params = {{"f", f},
              {"nx", static_cast<double>(nx)},
              {"ny", static_cast<double>(ny)},
              {"nz", static_cast<double>(nz)}};
  p.kh_max = (omega / 1500.0) *
             std::max({600.0 / nx, 1000.0 / ny, 600.0 / nz});
  add_resolution_warning(p);
  return p;
}

ProblemInstance ionization(double k0, int n, double ecs_angle) {
  const AxisSpec axis{n, 50.0, std::nullopt, EcsLayer{0, ecs_angle}};

  ProblemInstance p;
  p.grid = std::make_shared<const Grid>(build_grid({axis, axis}));
  p.k2 = WavenumberField::sampled(sample_unknowns(*p.grid, [k0](const RealPoint& q) {
    return std::exp(-q[0] * q[0]) + std::exp(-q[1] * q[1]) + k0 * k0;
  }));
  const std::vector<double> chi = sample_unknowns(*p.grid, [](const RealPoint& q) {
    return std::exp(-(q[0] * q[0] + q[1] * q[1]));
  });
  p.rhs.assign(chi.begin(), chi.end());
  p.label = "ionization";
  p.params = {{"k0", k0}, {"n", static_cast<double>(n)}};
  p.kh_max = std::sqrt(2.0 + k0 * k0) * (50.0 / n);
  add_resolution_warning(p);
  if (!(k0 > 0.0 && k0 < 5.0))
    p.warnings.push_back("k0 = " + std::to_string(k0) + " lies outside the modeled range (0, 5)");
  return p;
}

}  // namespace hmg
