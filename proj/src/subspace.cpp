#include "hodgevar/subspace.hpp"

#include "hodgevar/multiindex.hpp"

namespace hodgevar {

Eigen::MatrixXcd reduced_column_echelon(const Eigen::MatrixXcd& M, double tol) {
  Eigen::MatrixXcd A = M;
  int rows = int(A.rows()), cols = int(A.cols());
  double scale = std::max(1.0, A.size() > 0 ? A.cwiseAbs().maxCoeff() : 0.0);
  int lead = 0;
  for (int row = 0; row < rows && lead < cols; ++row) {
    // Pick the largest entry in this row among the remaining columns.
    int pc = -1;
    double best = tol * scale;
    for (int c = lead; c < cols; ++c)
      if (std::abs(A(row, c)) > best) {
        best = std::abs(A(row, c));
        pc = c;
      }
    if (pc < 0) continue;
    A.col(lead).swap(A.col(pc));
    A.col(lead) /= A(row, lead);
    for (int c = 0; c < cols; ++c) {
      if (c == lead) continue;
      A.col(c) -= A(row, c) * A.col(lead);
    }
    ++lead;
  }
  return A.leftCols(lead);
}

Eigen::VectorXcd pluecker_vector(const Eigen::MatrixXcd& M, std::size_t cap) {
  int rows = int(M.rows()), f = int(M.cols());
  if (f == 0) return Eigen::VectorXcd::Ones(1);
  std::uint64_t count = binomial(rows, f);
  if (count == 0 || count > cap) return {};
  auto subsets = combinations(rows, f);
  Eigen::VectorXcd out(subsets.size());
  Eigen::MatrixXcd sub(f, f);
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    auto idx = mask_indices(subsets[s]);
    for (int i = 0; i < f; ++i) sub.row(i) = M.row(idx[i] - 1);
    out[s] = sub.determinant();
  }
  return out;
}

Eigen::VectorXcd normalize_pluecker(const Eigen::VectorXcd& v, double tol) {
  if (v.size() == 0) return v;
  double nrm = v.norm();
  if (nrm == 0) return v;
  Eigen::VectorXcd out = v / nrm;
  double scale = out.cwiseAbs().maxCoeff();
  for (int i = 0; i < out.size(); ++i) {
    if (std::abs(out[i]) > tol * std::max(scale, 1.0)) {
      out *= std::conj(out[i]) / std::abs(out[i]);
      break;
    }
  }
  return out;
}

SubspaceChart make_chart(const Eigen::MatrixXcd& span, double tol, std::size_t pluecker_cap) {
  SubspaceChart ch;
  ch.ambient = int(span.rows());
  ch.span = span;
  ch.rcef = reduced_column_echelon(span, tol);
  ch.pluecker = normalize_pluecker(pluecker_vector(ch.rcef, pluecker_cap), tol);
  return ch;
}

}  // namespace hodgevar
