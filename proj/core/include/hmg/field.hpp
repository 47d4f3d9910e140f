#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmg {

using Complex = std::complex<double>;

/// Complex-valued grid function, one entry per grid unknown.
using Field = std::vector<Complex>;

/// Invalid problem or solver configuration. The CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A dense factorization hit a numerically zero pivot.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_size(const Field& f, std::size_t n, const char* where) {
  if (f.size() != n) {
    throw std::invalid_argument(std::string(where) + ": field has " +
                                std::to_string(f.size()) + " entries, expected " +
                                std::to_string(n));
  }
}

inline double nrm2(const Field& x) {
  double s = 0.0;
  for (const Complex& v : x) s += std::norm(v);
  return std::sqrt(s);
}

/// Conjugated inner product sum(conj(x_i) * y_i).
inline Complex dot(const Field& x, const Field& y) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline void axpy(Complex alpha, const Field& x, Field& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scal(Complex alpha, Field& x) {
  for (Complex& v : x) v *= alpha;
}

inline bool is_zero(const Field& x) {
  for (const Complex& v : x)
    if (v != Complex(0.0)) return false;
  return true;
}

/// Accumulates operator applications in units of finest-grid matvecs.
/// Intergrid transfers and dense back-substitutions are not counted.
struct WorkMeter {
  double units = 0.0;
  void add(double fine_grid_equivalents) { units += fine_grid_equivalents; }
};

}  // namespace hmg
