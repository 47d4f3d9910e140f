#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hmg/problems.hpp"

using namespace hmg;

namespace {

constexpr double kPi = std::numbers::pi;

/// Unknown index from per-axis interior node indices (j counted in interior
/// nodes, 1..n-1).
std::size_t unknown_index(const Grid& g, std::initializer_list<int> interior_j) {
  std::size_t idx = 0;
  std::size_t stride = 1;
  int a = 0;
  for (const int j : interior_j) {
    const Axis& ax = g.axes[static_cast<std::size_t>(a)];
    idx += stride * static_cast<std::size_t>(ax.ecs_low_points + j - 1);
    stride *= static_cast<std::size_t>(ax.unknown_count());
    ++a;
  }
  return idx;
}

}  // namespace

TEST_SUITE("problems") {

TEST_CASE("constant-k: unit center source and ECS sizing") {
  const ProblemInstance p = constant_k(40.0, 64);
  CHECK(p.grid->dim() == 2);
  for (const Axis& ax : p.grid->axes) {
    CHECK(ax.interior_points == 64);
    CHECK(ax.ecs_low_points == 16);
    CHECK(ax.ecs_high_points == 16);
  }

  int nonzero = 0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < p.rhs.size(); ++i)
    if (p.rhs[i] != Complex(0.0)) {
      ++nonzero;
      where = i;
    }
  CHECK(nonzero == 1);
  CHECK(p.rhs[where] == Complex(1.0));
  CHECK(where == unknown_index(*p.grid, {32, 32}));  // node nearest (1/2, 1/2)

  CHECK(p.k2.is_constant());
  CHECK(p.k2.constant_value() == doctest::Approx(1600.0));
  CHECK_FALSE(p.under_resolved());  // kh = 0.625 exactly
}

TEST_CASE("constant-k k=0 is a Poisson problem with Dirichlet option") {
  const ProblemInstance p = constant_k(0.0, 16, ConstantKBc::AllDirichlet);
  CHECK(p.k2.constant_value() == 0.0);
  for (const Axis& ax : p.grid->axes) {
    CHECK(ax.ecs_low_points == 0);
    CHECK(ax.low_boundary() == BoundaryKind::Dirichlet);
  }
  CHECK(p.rhs.size() == 15 * 15);
}

TEST_CASE("resolution warning fires exactly when kh exceeds 0.625") {
  CHECK(constant_k(80.0, 64).under_resolved());       // kh = 1.25
  CHECK_FALSE(constant_k(80.0, 128).under_resolved());  // kh = 0.625
  CHECK_FALSE(constant_k(40.0, 256).under_resolved());
  CHECK_FALSE(constant_k(80.0, 128).warnings.size());
  CHECK(constant_k(80.0, 64).warnings.size() == 1);
}

TEST_CASE("wedge velocity profile") {
  const ProblemInstance p = wedge_2d(30.0, 128, 256);
  const double omega = 2.0 * kPi * 30.0;

  // Sample the stored k^2 field at interior nodes with known coordinates.
  const Axis& ay = p.grid->axes[1];
  const double hx = p.grid->axes[0].interior_spacing;
  const double hy = ay.interior_spacing;

  // (100, 100): below the first interface, c = 2000.
  {
    const int jx = static_cast<int>(std::lround(100.0 / hx));
    const int jy = static_cast<int>(std::lround(100.0 / hy));
    const double k2 = p.k2.values()[unknown_index(*p.grid, {jx, jy})];
    CHECK(k2 == doctest::Approx(std::pow(omega / 2000.0, 2)).epsilon(1e-12));
  }
  // (0+, 600): middle layer, c = 1500 (x=0 is not an unknown column; use the
  // first interior line where the profile is identical).
  {
    const int jy = static_cast<int>(std::lround(600.0 / hy));
    const double k2 = p.k2.values()[unknown_index(*p.grid, {1, jy})];
    CHECK(k2 == doctest::Approx(std::pow(omega / 1500.0, 2)).epsilon(1e-3));
  }
  // (300, 950): above the second interface, c = 3000.
  {
    const int jx = static_cast<int>(std::lround(300.0 / hx));
    const int jy = static_cast<int>(std::lround(950.0 / hy));
    const double k2 = p.k2.values()[unknown_index(*p.grid, {jx, jy})];
    CHECK(k2 == doctest::Approx(std::pow(omega / 3000.0, 2)).epsilon(1e-12));
  }

  // Source at (300, 0) snaps one grid line inside the interior.
  std::size_t where = 0;
  int nonzero = 0;
  for (std::size_t i = 0; i < p.rhs.size(); ++i)
    if (p.rhs[i] != Complex(0.0)) {
      ++nonzero;
      where = i;
    }
  CHECK(nonzero == 1);
  CHECK(where == unknown_index(*p.grid, {64, 1}));
}

TEST_CASE("3D wedge extrudes the 2D profile along z") {
  const ProblemInstance p3 = wedge_3d(12.0, 16, 32, 16);
  const ProblemInstance p2 = wedge_2d(12.0, 16, 32);

  const int u0 = p3.grid->axes[0].unknown_count();
  const int u1 = p3.grid->axes[1].unknown_count();
  const int u2 = p3.grid->axes[2].unknown_count();
  REQUIRE(p2.k2.values().size() == static_cast<std::size_t>(u0) * u1);

  for (const int i2 : {0, u2 / 2, u2 - 1})
    for (int i1 = 0; i1 < u1; i1 += 7)
      for (int i0 = 0; i0 < u0; i0 += 5) {
        const std::size_t idx3 = static_cast<std::size_t>(i0) +
                                 static_cast<std::size_t>(u0) *
                                     (static_cast<std::size_t>(i1) +
                                      static_cast<std::size_t>(u1) * static_cast<std::size_t>(i2));
        const std::size_t idx2 =
            static_cast<std::size_t>(i0) + static_cast<std::size_t>(u0) * static_cast<std::size_t>(i1);
        CHECK(p3.k2.values()[idx3] == doctest::Approx(p2.k2.values()[idx2]).epsilon(1e-14));
      }

  // z axis mirrors the x axis; source sits nearest (300, hy, 300).
  CHECK(p3.grid->axes[2].interior_points == p3.grid->axes[0].interior_points);
  CHECK(p3.grid->axes[2].interior_spacing ==
        doctest::Approx(p3.grid->axes[0].interior_spacing));
  std::size_t where = 0;
  for (std::size_t i = 0; i < p3.rhs.size(); ++i)
    if (p3.rhs[i] != Complex(0.0)) where = i;
  CHECK(where == unknown_index(*p3.grid, {8, 1, 8}));
}

TEST_CASE("ionization model") {
  const int n = 64;
  const ProblemInstance p = ionization(3.0, n);

  SUBCASE("boundaries: Dirichlet at the origin faces, ECS at the far faces") {
    for (const Axis& ax : p.grid->axes) {
      CHECK(ax.low_boundary() == BoundaryKind::Dirichlet);
      CHECK(ax.high_boundary() == BoundaryKind::EcsTerminated);
      CHECK(ax.ecs_high_points == n / 4);
    }
  }

  SUBCASE("potential and source follow the Gaussian forms") {
    const double h = 50.0 / n;
    for (const int jx : {1, 2, 5})
      for (const int jy : {1, 3, 8}) {
        const double x = jx * h, y = jy * h;
        const std::size_t idx = unknown_index(*p.grid, {jx, jy});
        const double want_k2 = std::exp(-x * x) + std::exp(-y * y) + 9.0;
        CHECK(p.k2.values()[idx] == doctest::Approx(want_k2).epsilon(1e-12));
        const double want_chi = std::exp(-(x * x + y * y));
        CHECK(p.rhs[idx].real() == doctest::Approx(want_chi).epsilon(1e-12));
      }
    // Near the origin the potential approaches 2 + k0^2 (resolved on a finer
    // grid where the first unknown sits close to (0, 0)).
    const ProblemInstance fine = ionization(3.0, 512);
    const std::size_t origin = unknown_index(*fine.grid, {1, 1});
    CHECK(fine.k2.values()[origin] == doctest::Approx(2.0 + 9.0).epsilon(1e-2));
  }

  SUBCASE("source decays below 1e-10 outside x^2 + y^2 = 23.03") {
    std::size_t idx = 0;
    const int u0 = p.grid->axes[0].unknown_count();
    for (int i1 = 0; i1 < p.grid->axes[1].unknown_count(); ++i1)
      for (int i0 = 0; i0 < u0; ++i0, ++idx) {
        const double x = p.grid->axes[0].unknown_node(i0).real();
        const double y = p.grid->axes[1].unknown_node(i1).real();
        if (x * x + y * y > 23.03) CHECK(std::abs(p.rhs[idx]) < 1e-10);
      }
  }

  SUBCASE("k0 outside (0,5) only warns") {
    const ProblemInstance q = ionization(6.0, 64);
    CHECK(q.warnings.size() >= 1);
  }
}

TEST_CASE("wavenumber fields are real, finite and nonnegative") {
  for (const ProblemInstance& p :
       {constant_k(40.0, 32), wedge_2d(10.0, 32, 64), ionization(2.0, 32)}) {
    if (p.k2.is_constant()) {
      CHECK(p.k2.constant_value() >= 0.0);
      continue;
    }
    for (const double v : p.k2.values()) {
      CHECK(std::isfinite(v));
      CHECK(v >= 0.0);
    }
  }
}

}  // TEST_SUITE
