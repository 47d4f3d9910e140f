#include "hmg/krylov.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <vector>

namespace hmg {

namespace {

constexpr double kBreakdownTol = 1e-14;

}  // namespace

Preconditioner identity_preconditioner() {
  return [](const Field& r, WorkMeter&) { return r; };
}

std::pair<Field, ConvergenceReport> fgmres(const LevelOperator& op, const Field& b,
                                           const Preconditioner& precond,
                                           const FgmresOptions& opts) {
  require_size(b, op.size(), "fgmres");
  if (opts.maxiter < 0) throw ConfigError("fgmres: maxiter must be >= 0");
  if (opts.restart && *opts.restart < 1) throw ConfigError("fgmres: restart must be >= 1");

  const auto t_start = std::chrono::steady_clock::now();
  WorkMeter meter;
  ConvergenceReport report;

  Field x(b.size(), Complex(0.0));
  const double norm_b = nrm2(b);
  report.residual_history.push_back(norm_b);
  if (norm_b == 0.0) {
    report.converged = true;
    return {std::move(x), std::move(report)};
  }

  Field r = b;  // residual of the zero initial guess
  double r_norm = norm_b;
  int total_steps = 0;
  bool converged = false;
  bool breakdown = false;

  while (!converged && !breakdown && total_steps < opts.maxiter &&
         r_norm / norm_b >= opts.tol) {
    const int window = std::min(opts.restart.value_or(opts.maxiter),
                                opts.maxiter - total_steps);

    std::vector<Field> V;
    std::vector<Field> Z;
    V.reserve(static_cast<std::size_t>(window) + 1);
    Z.reserve(static_cast<std::size_t>(window));
    V.push_back(r);
    scal(Complex(1.0 / r_norm), V[0]);

    std::vector<std::vector<Complex>> hc;  // Givens-rotated Hessenberg columns
    std::vector<Complex> g = {r_norm};
    std::vector<Complex> cs, sn;

    int k = 0;
    Field w;
    for (int j = 0; j < window; ++j) {
      Z.push_back(precond(V[static_cast<std::size_t>(j)], meter));
      op.apply(Z.back(), w);
      meter.add(1.0);
      ++total_steps;

      hc.emplace_back(static_cast<std::size_t>(j) + 2, Complex(0.0));
      auto& col = hc.back();
      const double wnorm0 = nrm2(w);
      for (int i = 0; i <= j; ++i) {
        const Complex hij = dot(V[static_cast<std::size_t>(i)], w);
        col[static_cast<std::size_t>(i)] = hij;
        axpy(-hij, V[static_cast<std::size_t>(i)], w);
      }
      const double wnorm = nrm2(w);
      col[static_cast<std::size_t>(j) + 1] = wnorm;

      // Rotate the new column through the accumulated Givens rotations.
      for (int i = 0; i < j; ++i) {
        const Complex t = col[static_cast<std::size_t>(i)];
        col[static_cast<std::size_t>(i)] =
            std::conj(cs[static_cast<std::size_t>(i)]) * t +
            std::conj(sn[static_cast<std::size_t>(i)]) * col[static_cast<std::size_t>(i) + 1];
        col[static_cast<std::size_t>(i) + 1] = -sn[static_cast<std::size_t>(i)] * t +
                                               cs[static_cast<std::size_t>(i)] *
                                                   col[static_cast<std::size_t>(i) + 1];
      }
      const Complex a = col[static_cast<std::size_t>(j)];
      const Complex bb = col[static_cast<std::size_t>(j) + 1];
      const double rho = std::sqrt(std::norm(a) + std::norm(bb));
      if (rho == 0.0) {
        cs.push_back(1.0);
        sn.push_back(0.0);
      } else {
        cs.push_back(a / rho);
        sn.push_back(bb / rho);
        col[static_cast<std::size_t>(j)] = rho;
        col[static_cast<std::size_t>(j) + 1] = 0.0;
      }
      const Complex gt = g.back();
      g.back() = std::conj(cs.back()) * gt;
      g.push_back(-sn.back() * gt);

      k = j + 1;
      const double est = std::abs(g.back());
      report.residual_history.push_back(est);

      if (wnorm <= kBreakdownTol * std::max(1.0, wnorm0)) {
        breakdown = true;  // happy breakdown: solution exact in the subspace
        break;
      }
      if (est / norm_b < opts.tol) break;
      if (j + 1 < window) {
        V.push_back(w);
        scal(Complex(1.0 / wnorm), V.back());
      }
    }

    // y from the rotated upper-triangular system, then x += Z y.
    std::vector<Complex> y(static_cast<std::size_t>(k), Complex(0.0));
    for (int i = k - 1; i >= 0; --i) {
      Complex s = g[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        s -= hc[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
             y[static_cast<std::size_t>(j)];
      const Complex d = hc[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      y[static_cast<std::size_t>(i)] = d == Complex(0.0) ? Complex(0.0) : s / d;
    }
    for (int j = 0; j < k; ++j)
      axpy(y[static_cast<std::size_t>(j)], Z[static_cast<std::size_t>(j)], x);

    // True residual at the window boundary; it both verifies the recurrence
    // estimate and seeds the next restart cycle.
    op.residual(x, b, r);
    meter.add(1.0);
    r_norm = nrm2(r);
    report.residual_history.back() = r_norm;
    if (breakdown || r_norm / norm_b < opts.tol) converged = true;
  }

  report.iterations = total_steps;
  report.converged = converged;
  report.work_units = std::llround(meter.units);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return {std::move(x), std::move(report)};
}

}  // namespace hmg
