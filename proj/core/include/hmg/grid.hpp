#pragma once

#include <optional>
#include <vector>

#include "hmg/field.hpp"

namespace hmg {

/// Default rotation angle of exterior complex scaling layers.
inline constexpr double kDefaultEcsAngle = 0.52359877559829887;  // pi/6

/// Absorbing layer appended to one side of an axis: `points` grid intervals
/// whose spacing is the interior spacing rotated by `angle` into the complex
/// plane. points == 0 requests the automatic size interior_points / 4.
struct EcsLayer {
  int points = 0;
  double angle = kDefaultEcsAngle;
};

/// One axis of a tensor-product grid. interior_points counts the equispaced
/// intervals covering the physical extent; it must be a power of two so the
/// axis can be halved down to the coarsest level.
struct AxisSpec {
  int interior_points = 0;
  double interior_length = 1.0;
  std::optional<EcsLayer> ecs_low;
  std::optional<EcsLayer> ecs_high;
};

enum class BoundaryKind { Dirichlet, EcsTerminated };

/// Realized axis: the ordered interval widths (ECS low, interior, ECS high)
/// and their prefix-sum node coordinates. The interior starts at 0, so ECS-low
/// nodes carry coordinates below 0 rotated into the complex plane. The first
/// and last node are homogeneous Dirichlet; all others are unknowns.
struct Axis {
  int ecs_low_points = 0;
  int interior_points = 0;
  int ecs_high_points = 0;
  double ecs_low_angle = 0.0;
  double ecs_high_angle = 0.0;
  double interior_spacing = 0.0;

  std::vector<Complex> spacings;  // ecs_low + interior + ecs_high intervals
  std::vector<Complex> nodes;     // spacings.size() + 1 prefix sums

  int total_points() const { return ecs_low_points + interior_points + ecs_high_points; }
  int node_count() const { return total_points() + 1; }
  int unknown_count() const { return node_count() - 2; }

  BoundaryKind low_boundary() const {
    return ecs_low_points > 0 ? BoundaryKind::EcsTerminated : BoundaryKind::Dirichlet;
  }
  BoundaryKind high_boundary() const {
    return ecs_high_points > 0 ? BoundaryKind::EcsTerminated : BoundaryKind::Dirichlet;
  }

  /// Coordinate of unknown i (node i + 1).
  Complex unknown_node(int i) const { return nodes[static_cast<std::size_t>(i) + 1]; }

  /// Sum of all interval widths; preserved exactly by coarsening.
  Complex total_length() const;
};

/// Tensor-product structured grid. Immutable after construction; safe to
/// share read-only across threads.
struct Grid {
  std::vector<Axis> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  std::size_t unknown_count() const;
};

/// Builds the grid described by `spec`. Throws ConfigError when an interior
/// count is not a power of two (>= 2) or an ECS layer size is not n/4.
Grid build_grid(const std::vector<AxisSpec>& spec);

/// True when every axis segment still has an even interval count >= 2.
bool can_coarsen(const Grid& g);

/// Keeps every second node: each segment halves its interval count and
/// doubles its spacing, preserving segment identity and total length.
/// Throws ConfigError when the coarsest level has been reached.
Grid coarsen_grid(const Grid& g);

}  // namespace hmg
