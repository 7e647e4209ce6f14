#include "hodgevar/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hodgevar {

namespace {
Eigen::JacobiSVD<Eigen::MatrixXcd> svd_of(const Eigen::MatrixXcd& M) {
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(M, Eigen::ComputeThinU | Eigen::ComputeFullV);
}
double cutoff(const Eigen::VectorXd& sv, double tol) {
  double smax = sv.size() > 0 ? sv[0] : 0.0;
  return tol * std::max(smax, 1.0);
}
}  // namespace

int numeric_rank(const Eigen::MatrixXcd& M, double tol) {
  if (M.size() == 0) return 0;
  auto svd = svd_of(M);
  const auto& sv = svd.singularValues();
  double cut = cutoff(sv, tol);
  int r = 0;
  while (r < sv.size() && sv[r] > cut) ++r;
  return r;
}

Eigen::MatrixXcd orth(const Eigen::MatrixXcd& M, double tol) {
  if (M.size() == 0) return Eigen::MatrixXcd(M.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cut = cutoff(sv, tol);
  int r = 0;
  while (r < sv.size() && sv[r] > cut) ++r;
  return svd.matrixU().leftCols(r);
}

Eigen::MatrixXcd kernel(const Eigen::MatrixXcd& M, double tol) {
  if (M.size() == 0 || M.rows() == 0)
    return Eigen::MatrixXcd::Identity(M.cols(), M.cols());
  auto svd = svd_of(M);
  const auto& sv = svd.singularValues();
  double cut = cutoff(sv, tol);
  int r = 0;
  while (r < sv.size() && sv[r] > cut) ++r;
  return svd.matrixV().rightCols(M.cols() - r);
}

Eigen::MatrixXcd pinv(const Eigen::MatrixXcd& M, double tol) {
  if (M.size() == 0) return Eigen::MatrixXcd(M.cols(), M.rows());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cut = cutoff(sv, tol);
  Eigen::VectorXd inv = sv;
  for (int i = 0; i < sv.size(); ++i) inv[i] = sv[i] > cut ? 1.0 / sv[i] : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

std::vector<double> principal_angles(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                                     double tol) {
  Eigen::MatrixXcd Qa = orth(A, tol), Qb = orth(B, tol);
  if (Qa.cols() == 0 || Qb.cols() == 0) return {};
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Qa.adjoint() * Qb);
  const auto& sv = svd.singularValues();
  std::vector<double> angles;
  int k = std::min(Qa.cols(), Qb.cols());
  for (int i = 0; i < k; ++i) angles.push_back(std::acos(std::min(1.0, sv[i])));
  std::sort(angles.begin(), angles.end());
  return angles;
}

double max_principal_angle(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, double tol) {
  auto a = principal_angles(A, B, tol);
  return a.empty() ? 0.0 : a.back();
}

double containment_residual(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, double tol) {
  Eigen::MatrixXcd Qa = orth(A, tol);
  if (Qa.cols() == 0) return 0.0;
  Eigen::MatrixXcd P = projector(B, tol);
  return (Qa - P * Qa).norm();
}

Eigen::MatrixXcd projector(const Eigen::MatrixXcd& A, double tol) {
  Eigen::MatrixXcd Q = orth(A, tol);
  if (Q.cols() == 0) return Eigen::MatrixXcd::Zero(A.rows(), A.rows());
  return Q * Q.adjoint();
}

Eigen::MatrixXcd take_rows(const Eigen::MatrixXcd& M, const std::vector<int>& idx) {
  Eigen::MatrixXcd out(idx.size(), M.cols());
  for (int i = 0; i < int(idx.size()); ++i) out.row(i) = M.row(idx[i]);
  return out;
}

Eigen::MatrixXcd take_cols(const Eigen::MatrixXcd& M, const std::vector<int>& idx) {
  Eigen::MatrixXcd out(M.rows(), idx.size());
  for (int j = 0; j < int(idx.size()); ++j) out.col(j) = M.col(idx[j]);
  return out;
}

Eigen::MatrixXcd take_block(const Eigen::MatrixXcd& M, const std::vector<int>& rows,
                            const std::vector<int>& cols) {
  return take_rows(take_cols(M, cols), rows);
}

Eigen::VectorXcd take_entries(const Eigen::VectorXcd& v, const std::vector<int>& idx) {
  Eigen::VectorXcd out(idx.size());
  for (int i = 0; i < int(idx.size()); ++i) out[i] = v[idx[i]];
  return out;
}

Eigen::VectorXcd scatter(const Eigen::VectorXcd& v, const std::vector<int>& idx, int dim) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  for (int i = 0; i < int(idx.size()); ++i) out[idx[i]] = v[i];
  return out;
}

Eigen::MatrixXcd hcat(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  Eigen::MatrixXcd out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

Eigen::MatrixXcd vcat(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  Eigen::MatrixXcd out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

}  // namespace hodgevar
