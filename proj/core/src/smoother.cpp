#include "hmg/smoother.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmg {

namespace {

constexpr double kBreakdownTol = 1e-14;

int relax_jacobi(const LevelOperator& op, Field& x, Field& r, const WeightedJacobi& spec) {
  const Field& diag = op.diagonal();
  Field d(x.size());
  Field ad;
  for (int sweep = 0; sweep < spec.sweeps; ++sweep) {
    for (std::size_t i = 0; i < x.size(); ++i) d[i] = spec.omega * r[i] / diag[i];
    axpy(Complex(1.0), d, x);
    op.apply(d, ad);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ad[i];
  }
  return spec.sweeps;
}

int relax_polynomial(const LevelOperator& op, Field& x, Field& r,
                     const PolynomialSmoother& spec) {
  // x <- x - sum_i c_i A^{i-1} r and r <- r + sum_i c_i A^i r, so the error
  // propagates by p(A) = I + sum_i c_i A^i.
  const std::size_t m = spec.coeffs.size();
  if (m == 0) return 0;
  Field q = r;  // A^{i-1} r
  Field qn;
  Field r_new = r;
  for (std::size_t i = 1; i <= m; ++i) {
    axpy(-spec.coeffs[i - 1], q, x);
    op.apply(q, qn);
    axpy(spec.coeffs[i - 1], qn, r_new);
    std::swap(q, qn);
  }
  r = std::move(r_new);
  return static_cast<int>(m);
}

int relax_gmres(const LevelOperator& op, Field& x, Field& r, const GmresSmoother& spec) {
  const std::size_t m = spec.steps < 1 ? 0 : static_cast<std::size_t>(spec.steps);
  const double beta = nrm2(r);
  if (beta == 0.0 || m == 0) return 0;

  std::vector<Field> basis;
  basis.reserve(m + 1);
  basis.push_back(r);
  scal(Complex(1.0 / beta), basis[0]);

  // Modified Gram-Schmidt Arnoldi; h[j] is Hessenberg column j (size j+2).
  std::vector<std::vector<Complex>> h;
  int steps = 0;
  Field w;
  for (std::size_t j = 0; j < m; ++j) {
    op.apply(basis[j], w);
    ++steps;
    h.emplace_back(j + 2, Complex(0.0));
    const double wnorm0 = nrm2(w);
    for (std::size_t i = 0; i <= j; ++i) {
      const Complex hij = dot(basis[i], w);
      h[j][i] = hij;
      axpy(-hij, basis[i], w);
    }
    const double wnorm = nrm2(w);
    h[j][j + 1] = wnorm;
    if (wnorm <= kBreakdownTol * std::max(1.0, wnorm0)) break;  // happy breakdown
    basis.push_back(w);
    scal(Complex(1.0 / wnorm), basis.back());
  }

  // Least squares min || beta e_1 - H y || via Givens rotations.
  const std::size_t k = h.size();
  std::vector<std::vector<Complex>> hc(k);
  for (std::size_t j = 0; j < k; ++j) {
    hc[j].assign(k + 1, Complex(0.0));
    std::copy(h[j].begin(), h[j].end(), hc[j].begin());
  }
  std::vector<Complex> g(k + 1, Complex(0.0));
  g[0] = beta;
  std::vector<Complex> cs(k), sn(k);
  for (std::size_t j = 0; j < k; ++j) {
    auto& col = hc[j];
    for (std::size_t i = 0; i < j; ++i) {
      const Complex t = col[i];
      col[i] = std::conj(cs[i]) * t + std::conj(sn[i]) * col[i + 1];
      col[i + 1] = -sn[i] * t + cs[i] * col[i + 1];
    }
    const Complex a = col[j];
    const Complex b = col[j + 1];
    const double rho = std::sqrt(std::norm(a) + std::norm(b));
    if (rho == 0.0) {
      cs[j] = 1.0;
      sn[j] = 0.0;
      continue;
    }
    cs[j] = a / rho;
    sn[j] = b / rho;
    col[j] = rho;
    col[j + 1] = 0.0;
    const Complex gt = g[j];
    g[j] = std::conj(cs[j]) * gt;
    g[j + 1] = -sn[j] * gt;
  }
  std::vector<Complex> y(k, Complex(0.0));
  for (std::size_t i = k; i-- > 0;) {
    Complex s = g[i];
    for (std::size_t j = i + 1; j < k; ++j) s -= hc[j][i] * y[j];
    y[i] = hc[i][i] == Complex(0.0) ? Complex(0.0) : s / hc[i][i];
  }

  // x += V y; the residual update r = V (beta e_1 - H y) reuses the Arnoldi
  // data instead of spending another operator application.
  for (std::size_t j = 0; j < k; ++j) axpy(y[j], basis[j], x);

  std::vector<Complex> res_coeff(basis.size(), Complex(0.0));
  res_coeff[0] = beta;
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < h[j].size() && i < basis.size(); ++i)
      res_coeff[i] -= h[j][i] * y[j];
  std::fill(r.begin(), r.end(), Complex(0.0));
  for (std::size_t i = 0; i < basis.size(); ++i) axpy(res_coeff[i], basis[i], r);
  return steps;
}

}  // namespace

int relax(const LevelOperator& op, Field& x, Field& r, const SmootherSpec& spec) {
  require_size(x, op.size(), "relax");
  require_size(r, op.size(), "relax");
  return std::visit(
      [&](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, WeightedJacobi>) return relax_jacobi(op, x, r, s);
        if constexpr (std::is_same_v<T, PolynomialSmoother>)
          return relax_polynomial(op, x, r, s);
        if constexpr (std::is_same_v<T, GmresSmoother>) return relax_gmres(op, x, r, s);
      },
      spec);
}

Field smooth(const LevelOperator& op, Field x, const Field& b, const SmootherSpec& spec) {
  require_size(b, op.size(), "smooth");
  Field r = is_zero(x) ? b : op.residual(x, b);
  relax(op, x, r, spec);
  return x;
}

PolynomialCheckReport smoothing_polynomial_check(const SmootherSpec& spec,
                                                 std::span<const Complex> spectrum) {
  if (spectrum.empty())
    throw std::invalid_argument("smoothing_polynomial_check: empty spectrum");
  if (std::holds_alternative<GmresSmoother>(spec))
    throw std::invalid_argument(
        "smoothing_polynomial_check: GMRES smoothing has no fixed polynomial");

  auto evaluate = [&](Complex t) -> Complex {
    if (const auto* j = std::get_if<WeightedJacobi>(&spec)) {
      Complex p = 1.0;
      for (int s = 0; s < j->sweeps; ++s) p *= (Complex(1.0) - j->omega * t);
      return p;
    }
    const auto& coeffs = std::get<PolynomialSmoother>(spec).coeffs;
    // Horner on 1 + c_1 t + ... + c_m t^m.
    Complex p = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) p = (p + coeffs[i]) * t;
    return p + 1.0;
  };

  PolynomialCheckReport report;
  double max_mod = 0.0;
  for (const Complex& lambda : spectrum) max_mod = std::max(max_mod, std::abs(evaluate(lambda)));
  report.max_modulus = max_mod;
  report.stable = max_mod < 1.0;
  report.oscillatory_root_gap = std::abs(evaluate(spectrum.back()));
  return report;
}

std::vector<Complex> polynomial_from_roots(std::span<const Complex> roots) {
  // Expand prod_i (1 - t/r_i) into 1 + c_1 t + ... + c_m t^m.
  std::vector<Complex> coeffs;  // c_1..c_m, initially the empty product
  for (const Complex& root : roots) {
    const Complex a = -1.0 / root;
    std::vector<Complex> next(coeffs.size() + 1, Complex(0.0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) next[i] += coeffs[i];
    next[0] += a;  // a * t * 1
    for (std::size_t i = 0; i < coeffs.size(); ++i) next[i + 1] += a * coeffs[i];
    coeffs = std::move(next);
  }
  return coeffs;
}

}  // namespace hmg
