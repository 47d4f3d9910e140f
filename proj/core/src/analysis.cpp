#include "hmg/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hmg {

namespace {

constexpr double kResonanceTol = 1e-14;

void check_mode(int l, int n, const char* where) {
  if (n < 2) throw std::invalid_argument(std::string(where) + ": need n >= 2");
  if (l < 1 || l > n - 1)
    throw std::invalid_argument(std::string(where) + ": mode index " + std::to_string(l) +
                                " outside 1.." + std::to_string(n - 1));
}

}  // namespace

ModeIndex::ModeIndex(int l_, int n_) : l(l_), n(n_) { check_mode(l_, n_, "ModeIndex"); }

double laplacian_eigenvalue(int l, int n, double h, int d) {
  check_mode(l, n, "laplacian_eigenvalue");
  const double s = std::sin(l * std::numbers::pi / (2.0 * n));
  return 4.0 * d / (h * h) * s * s;
}

Complex scheme_eigenvalue(double lambda_L, double k, const PerturbationScheme& scheme) {
  return scheme.laplacian_factor() * lambda_L - scheme.wavenumber_factor() * (k * k);
}

TwoGridModeResponse two_grid_amplification(int l, int n, const PerturbationScheme& fine,
                                           const PerturbationScheme& coarse, double k) {
  check_mode(l, n, "two_grid_amplification");
  if (l >= n / 2)
    throw std::invalid_argument("two_grid_amplification: need a smooth mode l < n/2");

  const double h = 1.0 / n;
  const int lp = n - l;
  const double arg = l * std::numbers::pi / (2.0 * n);
  const double cl = std::cos(arg) * std::cos(arg);
  const double sl = std::sin(arg) * std::sin(arg);

  const Complex lam_smooth = scheme_eigenvalue(laplacian_eigenvalue(l, n, h, 1), k, fine);
  const Complex lam_osc = scheme_eigenvalue(laplacian_eigenvalue(lp, n, h, 1), k, fine);
  const Complex lam_coarse =
      scheme_eigenvalue(laplacian_eigenvalue(l, n / 2, 2.0 * h, 1), k, coarse);

  TwoGridModeResponse out;
  if (std::abs(lam_coarse) == 0.0) {
    out.resonant = true;
    const double inf = std::numeric_limits<double>::infinity();
    out.smooth_to_smooth = out.osc_to_osc = Complex(inf, 0.0);
    return out;
  }

  // Full weighting takes w_l to c_l w and w_{l'} to -s_l w on the coarse
  // grid; interpolation returns c_l w_l - s_l w_{l'}. Chaining these through
  // the exact coarse solve gives the four mixing coefficients.
  const Complex ratio_smooth = lam_smooth / lam_coarse;
  const Complex ratio_osc = lam_osc / lam_coarse;
  out.smooth_to_smooth = 1.0 - cl * cl * ratio_smooth;
  out.smooth_to_osc = cl * sl * ratio_smooth;
  out.osc_to_smooth = sl * cl * ratio_osc;
  out.osc_to_osc = 1.0 - sl * sl * ratio_osc;
  return out;
}

Complex gamma_from_lambda(double lambda_L, double k, double dtheta, Variant variant) {
  const double k2 = k * k;
  Complex num, den;
  switch (variant) {
    case Variant::Csl:
      num = k2 * (std::polar(1.0, dtheta) - 1.0);
      den = lambda_L - k2 * std::polar(1.0, dtheta);
      break;
    case Variant::Csg:
      num = k2 * (1.0 - std::polar(1.0, -dtheta));
      den = lambda_L * std::polar(1.0, -dtheta) - k2;
      break;
    default:
      throw std::invalid_argument("gamma_from_lambda: variant must be Csl or Csg");
  }
  if (num == Complex(0.0)) return Complex(0.0);  // k = 0 or dtheta = 0
  if (std::abs(den) < kResonanceTol) {
    const double inf = std::numeric_limits<double>::infinity();
    return Complex(inf, inf);  // resonant coarse eigenvalue
  }
  return num / den;
}

Complex gamma_l(int l, int n_coarse, double h_coarse, int d, double k, double dtheta,
                Variant variant) {
  return gamma_from_lambda(laplacian_eigenvalue(l, n_coarse, h_coarse, d), k, dtheta,
                           variant);
}

std::vector<GammaEntry> gamma_spectrum_table(int n, double k, double dtheta, int d,
                                             Variant variant) {
  if (d != 1 && d != 2)
    throw std::invalid_argument("gamma_spectrum_table: d must be 1 or 2");
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("gamma_spectrum_table: need even n >= 4");

  const int nc = n / 2;
  const double hc = 2.0 / n;
  std::vector<GammaEntry> table;

  if (d == 1) {
    table.reserve(nc - 1);
    for (int l = 1; l <= nc - 1; ++l)
      table.push_back({l, gamma_l(l, nc, hc, 1, k, dtheta, variant)});
    return table;
  }

  table.reserve(static_cast<std::size_t>(nc - 1) * (nc - 1));
  int index = 1;
  for (int l1 = 1; l1 <= nc - 1; ++l1) {
    const double lam1 = laplacian_eigenvalue(l1, nc, hc, 1);
    for (int l2 = 1; l2 <= nc - 1; ++l2, ++index) {
      const double lam = lam1 + laplacian_eigenvalue(l2, nc, hc, 1);
      table.push_back({index, gamma_from_lambda(lam, k, dtheta, variant)});
    }
  }
  return table;
}

}  // namespace hmg
