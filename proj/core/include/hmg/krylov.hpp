#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "hmg/field.hpp"
#include "hmg/operator.hpp"
#include "hmg/report.hpp"

namespace hmg {

/// Maps a residual to a preconditioned correction, charging its operator
/// applications to the supplied meter.
using Preconditioner = std::function<Field(const Field&, WorkMeter&)>;

Preconditioner identity_preconditioner();

struct FgmresOptions {
  std::optional<int> restart;  // nullopt: full (un-restarted) FGMRES
  double tol = 1e-7;
  int maxiter = 200;  // total outer Krylov steps across restart cycles
};

/// Right-preconditioned flexible GMRES on the (unperturbed) fine operator.
/// Stores the preconditioned basis Z alongside the Arnoldi basis V, so the
/// preconditioner may vary between steps (a GMRES-smoothed V-cycle is
/// nonlinear). Modified Gram-Schmidt with Givens-rotation least squares;
/// convergence is verified with a direct residual before success is
/// reported. Arnoldi breakdown returns the subspace-exact solution.
std::pair<Field, ConvergenceReport> fgmres(const LevelOperator& op, const Field& b,
                                           const Preconditioner& precond,
                                           const FgmresOptions& opts = {});

}  // namespace hmg
