#ifndef HODGEVAR_SUBSPACE_HPP
#define HODGEVAR_SUBSPACE_HPP

#include <Eigen/Dense>

#include "hodgevar/config.hpp"
#include "hodgevar/linalg.hpp"

namespace hodgevar {

// A point of a Grassmannian: a subspace given by spanning columns, with a
// canonical reduced column echelon form (unique per subspace) and a
// normalized Pluecker coordinate vector for chart-independent comparisons.
struct SubspaceChart {
  int ambient = 0;
  Eigen::MatrixXcd span;      // columns as supplied
  Eigen::MatrixXcd rcef;      // reduced column echelon form, full column rank
  Eigen::VectorXcd pluecker;  // unit norm, first significant entry positive real; empty if capped
  int dim() const { return int(rcef.cols()); }
};

// Unique reduced column echelon form of the column space.
Eigen::MatrixXcd reduced_column_echelon(const Eigen::MatrixXcd& M, double tol);

// Pluecker coordinates: determinants of the dim x dim row minors, in
// lexicographic row-subset order.  Empty when C(rows, cols) exceeds cap.
Eigen::VectorXcd pluecker_vector(const Eigen::MatrixXcd& M, std::size_t cap);

// Unit norm with the first significant entry rotated positive real.
Eigen::VectorXcd normalize_pluecker(const Eigen::VectorXcd& v, double tol);

SubspaceChart make_chart(const Eigen::MatrixXcd& span, double tol,
                         std::size_t pluecker_cap = 500000);

}  // namespace hodgevar

#endif
