#ifndef HODGEVAR_LINALG_HPP
#define HODGEVAR_LINALG_HPP

#include <Eigen/Dense>
#include <vector>

#include "hodgevar/config.hpp"

namespace hodgevar {

// Numerical rank: singular values above tol * max(sv_max, 1).
int numeric_rank(const Eigen::MatrixXcd& M, double tol);

// Orthonormal basis of the column space (left singular vectors).
Eigen::MatrixXcd orth(const Eigen::MatrixXcd& M, double tol);

// Orthonormal basis of the kernel (right singular vectors of small sv).
Eigen::MatrixXcd kernel(const Eigen::MatrixXcd& M, double tol);

// Moore-Penrose pseudo-inverse with the same spectral cutoff.
Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& M, double tol);

// Principal angles between the column spans, ascending.
std::vector<double> principal_angles(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                                     double tol);
double max_principal_angle(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, double tol);

// || (1 - P_B) a || max over unit vectors a spanning col(A); zero iff A <= B.
double containment_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, double tol);

// Orthogonal projector onto the column span.
Eigen::MatrixXcd projector(const Eigen::MatrixXcd& A, double tol);

// Rows/cols extraction by index lists.
Eigen::MatrixXcd take_rows(const Eigen::MatrixXcd& M, const std::vector<int>& idx);
Eigen::MatrixXcd take_cols(const Eigen::MatrixXcd& M, const std::vector<int>& idx);
Eigen::MatrixXcd take_block(const Eigen::MatrixXcd& M, const std::vector<int>& rows,
                            const std::vector<int>& cols);
Eigen::VectorXcd take_entries(const Eigen::VectorXcd& v, const std::vector<int>& idx);
// Scatter a block vector back into a full-length vector.
Eigen::VectorXcd scatter(const Eigen::VectorXcd& v, const std::vector<int>& idx, int dim);

Eigen::MatrixXcd hcat(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
Eigen::MatrixXcd vcat(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace hodgevar

#endif
