#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hmg/field.hpp"
#include "hmg/grid.hpp"
#include "hmg/operator.hpp"

namespace hmg {

/// Resolution rule of roughly ten grid points per wavelength.
inline constexpr double kResolutionLimit = 0.625;  // max k*h before accuracy degrades

/// A benchmark problem: grid, squared-wavenumber field and source term.
struct ProblemInstance {
  std::shared_ptr<const Grid> grid;
  WavenumberField k2;
  Field rhs;
  std::string label;
  std::map<std::string, double> params;
  double kh_max = 0.0;
  std::vector<std::string> warnings;

  bool under_resolved() const { return kh_max > kResolutionLimit; }
};

enum class ConstantKBc { AllEcs, AllDirichlet };

/// Unit square, constant wavenumber, unit point source at the center.
/// ECS layers of n/4 points on every face unless bc is AllDirichlet.
ProblemInstance constant_k(double k, int n, ConstantKBc bc = ConstantKBc::AllEcs,
                           double ecs_angle = kDefaultEcsAngle);

/// Three-layer velocity wedge on (0,600)x(0,1000) at frequency f, unit point
/// source near (300, 0), ECS on all faces.
ProblemInstance wedge_2d(double f, int nx, int ny, double ecs_angle = kDefaultEcsAngle);

/// The 2D wedge extruded along z (a copy of the x axis); velocity does not
/// depend on z and the source sits near (300, 0, 300).
ProblemInstance wedge_3d(double f, int nx, int ny, int nz,
                         double ecs_angle = kDefaultEcsAngle);

/// Two-electron ionization model on (0,50)^2 with Gaussian potential and
/// source, Dirichlet at the x=0 and y=0 faces, ECS at the far faces.
ProblemInstance ionization(double k0, int n, double ecs_angle = kDefaultEcsAngle);

}  // namespace hmg
