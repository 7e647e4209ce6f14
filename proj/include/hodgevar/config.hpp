#ifndef HODGEVAR_CONFIG_HPP
#define HODGEVAR_CONFIG_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace hodgevar {

using Complex = std::complex<double>;

// Numerical knobs shared across the library.  All residual thresholds in
// tests and reports derive from `tol` unless a check pins its own value.
struct Config {
  double tol = 1e-9;          // rank tolerance: sv <= tol * max(sv_max, 1) counts as zero
  int order = 6;              // truncation order N of deformation power series
  double sample_radius = 0.1; // admissible |t| for grid samples (reported, not enforced)
  double green_floor = 1e-8;  // smallest nonzero Laplacian eigenvalue before an ill-conditioning warning
  double fd_step = 1e-4;      // finite difference step for holomorphy checks
  std::uint64_t seed = 42;    // seed for randomized property checks
  std::size_t pluecker_cap = 500000; // skip Pluecker vectors with more coordinates than this
};

inline std::vector<Complex> default_grid() {
  return {Complex(0, 0),   Complex(0.01, 0), Complex(-0.01, 0),
          Complex(0.05, 0), Complex(-0.05, 0), Complex(0.1, 0), Complex(-0.1, 0)};
}

}  // namespace hodgevar

#endif
