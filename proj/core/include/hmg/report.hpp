#pragma once

#include <vector>

#include "hmg/field.hpp"

namespace hmg {

/// Outcome of an iterative solve. residual_history holds one entry per
/// iterate including the initial guess, so its length is iterations + 1.
/// work_units counts operator applications weighted by level size relative
/// to the finest grid.
struct ConvergenceReport {
  int iterations = 0;
  std::vector<double> residual_history;
  bool converged = false;
  double wall_seconds = 0.0;
  long long work_units = 0;

  double final_relative_residual() const {
    if (residual_history.empty() || residual_history.front() == 0.0) return 0.0;
    return residual_history.back() / residual_history.front();
  }
};

}  // namespace hmg
