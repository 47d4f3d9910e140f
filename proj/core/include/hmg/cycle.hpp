#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hmg/dense.hpp"
#include "hmg/field.hpp"
#include "hmg/operator.hpp"
#include "hmg/problems.hpp"
#include "hmg/report.hpp"
#include "hmg/smoother.hpp"
#include "hmg/transfer.hpp"

namespace hmg {

inline constexpr double kDefaultThetaMax = 0.52359877559829887;  // pi/6

/// Hard upper bound on the per-level perturbation: the smooth-mode weight
/// |1 - e^{-i dtheta}| reaches 1 at dtheta = pi/3.
inline constexpr double kMaxPerLevelAngle = 1.0471975511965976;  // pi/3

/// Per-level perturbation angles. The level-dependent schedule assigns
/// theta_m = m * dtheta with dtheta = theta_max / levels, so the finest level
/// (m = 0) is unperturbed and the rotation grows toward the coarsest level.
struct ThetaSchedule {
  double theta_max = 0.0;
  double dtheta = 0.0;
  std::vector<double> angles;

  int levels() const { return static_cast<int>(angles.size()); }

  /// Throws ConfigError when dtheta would reach pi/3.
  static ThetaSchedule level_dependent(double theta_max, int levels);
  /// Same angle on every level (fixed-shift preconditioner hierarchies).
  static ThetaSchedule fixed(double theta, int levels);
};

struct CycleConfig {
  int nu1 = 1;
  int nu2 = 1;
  SmootherSpec smoother = GmresSmoother{3};
  Variant variant = Variant::Csg;
  /// Scale the restricted residual by e^{-i dtheta} between levels. Defaults
  /// to true for Csg; ignored (no scaling) for Csl and Unperturbed.
  std::optional<bool> rhs_scaling;
  double theta_max = kDefaultThetaMax;
  /// All levels carry theta_max instead of the level-dependent ladder.
  bool fixed_angle = false;
  std::optional<int> max_levels;
  std::size_t coarse_dense_cap = 20000;

  bool scaling_enabled() const {
    return variant == Variant::Csg && rhs_scaling.value_or(true);
  }
  /// Solver-facing validation; hierarchies built for two-grid analysis may
  /// bypass it (zero smoothing steps).
  void validate() const;
};

/// The ladder of level operators, transfer metadata and the coarsest-level
/// factorization. Immutable after build; shareable across threads. Each
/// concurrent solve owns its iterate and workspace fields.
class Hierarchy {
 public:
  static Hierarchy build(std::shared_ptr<const Grid> fine_grid, WavenumberField k2,
                         const CycleConfig& config);

  int levels() const { return static_cast<int>(ops_.size()); }
  const LevelOperator& level_op(int m) const { return ops_[static_cast<std::size_t>(m)]; }
  const Grid& level_grid(int m) const { return ops_[static_cast<std::size_t>(m)].grid(); }
  const ThetaSchedule& schedule() const { return schedule_; }
  const CycleConfig& config() const { return config_; }
  const DenseLu& coarse_lu() const { return *coarse_lu_; }

  /// Unknown count of level m relative to the finest level.
  double level_weight(int m) const { return weights_[static_cast<std::size_t>(m)]; }

 private:
  std::vector<LevelOperator> ops_;
  ThetaSchedule schedule_;
  CycleConfig config_;
  std::vector<double> weights_;
  std::shared_ptr<const DenseLu> coarse_lu_;
};

Hierarchy build_hierarchy(const ProblemInstance& problem, const CycleConfig& config);

/// One V(nu1, nu2) cycle starting from iterate x at level m. The coarsest
/// level is solved by dense LU; SingularMatrixError propagates (a critically
/// indefinite coarse level, possible only for the Unperturbed variant).
Field vcycle(const Hierarchy& h, int m, Field x, const Field& b, WorkMeter* meter = nullptr);

/// Repeats V-cycles from a zero initial guess until the relative residual of
/// the finest-level operator drops below tol. Convergence is verified with a
/// directly computed residual before reporting success; hitting maxiter
/// reports converged = false rather than throwing.
std::pair<Field, ConvergenceReport> solve(const Hierarchy& h, const Field& b,
                                          double tol = 1e-7, int maxiter = 100);

/// One V-cycle from a zero initial guess, the preconditioner form. Not a
/// linear map in general: GMRES smoothing adapts to its input.
Field precondition(const Hierarchy& h, const Field& r, WorkMeter* meter = nullptr);

}  // namespace hmg
