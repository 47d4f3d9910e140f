#include "hmg/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hmg {

namespace {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

Axis make_axis(int ecs_low_points, double ecs_low_angle, int interior_points,
               double interior_spacing, int ecs_high_points, double ecs_high_angle) {
  Axis ax;
  ax.ecs_low_points = ecs_low_points;
  ax.interior_points = interior_points;
  ax.ecs_high_points = ecs_high_points;
  ax.ecs_low_angle = ecs_low_angle;
  ax.ecs_high_angle = ecs_high_angle;
  ax.interior_spacing = interior_spacing;

  ax.spacings.reserve(static_cast<std::size_t>(ax.total_points()));
  const Complex h_low = std::polar(interior_spacing, ecs_low_angle);
  const Complex h_high = std::polar(interior_spacing, ecs_high_angle);
  for (int i = 0; i < ecs_low_points; ++i) ax.spacings.push_back(h_low);
  for (int i = 0; i < interior_points; ++i) ax.spacings.emplace_back(interior_spacing, 0.0);
  for (int i = 0; i < ecs_high_points; ++i) ax.spacings.push_back(h_high);

  // Prefix sums anchored so the interior segment starts at coordinate 0.
  ax.nodes.resize(ax.spacings.size() + 1);
  ax.nodes[0] = -static_cast<double>(ecs_low_points) * h_low;
  for (std::size_t i = 0; i < ax.spacings.size(); ++i)
    ax.nodes[i + 1] = ax.nodes[i] + ax.spacings[i];
  return ax;
}

int resolve_ecs_points(const EcsLayer& layer, int interior_points, const char* side) {
  const int auto_points = interior_points / 4;
  int points = layer.points;
  if (points == 0) points = auto_points;
  if (points < 1)
    throw ConfigError(std::string("ECS layer (") + side + "): needs interior_points >= 4");
  if (points != auto_points)
    throw ConfigError(std::string("ECS layer (") + side + "): point count " +
                      std::to_string(points) + " must be interior_points / 4 = " +
                      std::to_string(auto_points));
  if (!(layer.angle > 0.0) || !(layer.angle < std::numbers::pi / 2))
    throw ConfigError(std::string("ECS layer (") + side + "): angle must lie in (0, pi/2)");
  return points;
}

}  // namespace

Complex Axis::total_length() const {
  Complex s = 0.0;
  for (const Complex& w : spacings) s += w;
  return s;
}

std::size_t Grid::unknown_count() const {
  std::size_t n = 1;
  for (const Axis& ax : axes) n *= static_cast<std::size_t>(ax.unknown_count());
  return n;
}

Grid build_grid(const std::vector<AxisSpec>& spec) {
  if (spec.empty() || spec.size() > 3)
    throw ConfigError("build_grid: expected 1, 2 or 3 axes, got " + std::to_string(spec.size()));

  Grid g;
  g.axes.reserve(spec.size());
  for (std::size_t a = 0; a < spec.size(); ++a) {
    const AxisSpec& s = spec[a];
    if (!is_power_of_two(s.interior_points) || s.interior_points < 2)
      throw ConfigError("axis " + std::to_string(a) + ": interior_points " +
                        std::to_string(s.interior_points) + " must be a power of two >= 2");
    if (!(s.interior_length > 0.0))
      throw ConfigError("axis " + std::to_string(a) + ": interior_length must be positive");

    int low_points = 0, high_points = 0;
    double low_angle = 0.0, high_angle = 0.0;
    if (s.ecs_low) {
      low_points = resolve_ecs_points(*s.ecs_low, s.interior_points, "low");
      low_angle = s.ecs_low->angle;
    }
    if (s.ecs_high) {
      high_points = resolve_ecs_points(*s.ecs_high, s.interior_points, "high");
      high_angle = s.ecs_high->angle;
    }

    const double h = s.interior_length / s.interior_points;
    g.axes.push_back(make_axis(low_points, low_angle, s.interior_points, h,
                               high_points, high_angle));
  }
  return g;
}

bool can_coarsen(const Grid& g) {
  for (const Axis& ax : g.axes) {
    auto segment_ok = [](int points) { return points == 0 || (points >= 2 && points % 2 == 0); };
    // The interior may not shrink below 2 intervals (one Dirichlet unknown).
    if (ax.interior_points < 4) return false;
    if (!segment_ok(ax.ecs_low_points) || !segment_ok(ax.ecs_high_points)) return false;
  }
  return true;
}

Grid coarsen_grid(const Grid& g) {
  if (!can_coarsen(g))
    throw ConfigError("coarsen_grid: coarsest level reached (odd segment interval count)");

  Grid coarse;
  coarse.axes.reserve(g.axes.size());
  for (const Axis& ax : g.axes) {
    coarse.axes.push_back(make_axis(ax.ecs_low_points / 2, ax.ecs_low_angle,
                                    ax.interior_points / 2, 2.0 * ax.interior_spacing,
                                    ax.ecs_high_points / 2, ax.ecs_high_angle));
  }
  return coarse;
}

}  // namespace hmg
