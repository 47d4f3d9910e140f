#pragma once

#include <span>
#include <variant>
#include <vector>

#include "hmg/field.hpp"
#include "hmg/operator.hpp"

namespace hmg {

/// x <- x + omega D^{-1} (b - A x), repeated `sweeps` times.
struct WeightedJacobi {
  Complex omega = Complex(2.0 / 3.0);
  int sweeps = 1;
};

/// Fixed-coefficient polynomial relaxation with error propagation
/// p(t) = 1 + sum_i coeffs[i-1] t^i. Analysis and tests only; the
/// level-adaptive GMRES smoother is used in production cycles.
struct PolynomialSmoother {
  std::vector<Complex> coeffs;  // c_1 .. c_m
};

/// m un-restarted GMRES steps on A e = (b - A x) with zero initial guess,
/// then x <- x + e. Realizes a residual-minimizing degree-m smoothing
/// polynomial whose coefficients are redetermined on every application.
struct GmresSmoother {
  int steps = 3;
};

using SmootherSpec = std::variant<WeightedJacobi, PolynomialSmoother, GmresSmoother>;

/// One smoother application. Returns the updated iterate.
Field smooth(const LevelOperator& op, Field x, const Field& b, const SmootherSpec& spec);

/// In-place smoother application that maintains the residual invariant
/// r == b - A x on entry and exit without recomputing it from scratch.
/// Returns the number of operator applications performed.
int relax(const LevelOperator& op, Field& x, Field& r, const SmootherSpec& spec);

struct PolynomialCheckReport {
  bool stable = false;             // all |p(lambda)| < 1 over the spectrum
  double max_modulus = 0.0;        // max_l |p(lambda_l)|
  double oscillatory_root_gap = 0.0;  // |p(lambda_n)| at the most oscillatory eigenvalue
};

/// Evaluates the fixed smoothing polynomial of `spec` over a spectrum ordered
/// smooth-to-oscillatory. GmresSmoother has no fixed polynomial and is
/// rejected. Throws on an empty spectrum.
PolynomialCheckReport smoothing_polynomial_check(const SmootherSpec& spec,
                                                 std::span<const Complex> spectrum);

/// Coefficients c_1..c_m of p(t) = prod_i (1 - t / roots[i]).
std::vector<Complex> polynomial_from_roots(std::span<const Complex> roots);

}  // namespace hmg
