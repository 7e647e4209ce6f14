#include "hodgevar/cohomology.hpp"

namespace hodgevar {

namespace {

// Full-length embedding of a block-local exact matrix (rows indexed by idx).
exact::Matrix embed_rows_exact(const exact::Matrix& local, const std::vector<int>& idx, int dim) {
  exact::Matrix out(dim, local.cols());
  for (int i = 0; i < int(idx.size()); ++i)
    for (int j = 0; j < local.cols(); ++j) out.at(idx[i], j) = local.at(i, j);
  return out;
}

std::vector<int> empty_or_block(const Algebra& A, int p, int q) {
  if (p < 0 || q < 0 || p > A.n() || q > A.n()) return {};
  return A.block(p, q);
}

}  // namespace

ExactOps ExactOps::build(const Model& m) {
  ExactOps ex;
  ex.model = &m;
  const exact::Matrix& del = m.del_exact();
  const exact::Matrix& delbar = m.delbar_exact();
  exact::Matrix del_star = del.adjoint();
  exact::Matrix delbar_star = delbar.adjoint();
  ex.ddbar = del * delbar;
  ex.ddbar_star = ex.ddbar.adjoint();
  exact::Matrix T = delbar_star * del;
  ex.lap_bc = ex.ddbar * ex.ddbar_star + ex.ddbar_star * ex.ddbar + T * T.adjoint() +
              T.adjoint() * T + delbar_star * delbar + del_star * del;
  ex.lap_delbar = delbar * delbar_star + delbar_star * delbar;
  return ex;
}

CohomologySpace cohomology_space(const MetricContext& mc, Theory th, int p_or_k, int q) {
  CohomologySpace out;
  out.theory = th;
  if (th == Theory::derham) {
    out.k = p_or_k;
    out.reps = mc.harmonic_basis_d(p_or_k);
  } else {
    out.p = p_or_k;
    out.q = q;
    out.k = p_or_k + q;
    out.reps =
        th == Theory::bc ? mc.harmonic_basis_bc(p_or_k, q) : mc.harmonic_basis_delbar(p_or_k, q);
  }
  out.dim = int(out.reps.cols());
  return out;
}

int bc_dim_quotient(const MetricContext& mc, int p, int q) {
  const Algebra& A = mc.algebra();
  const auto& blk = A.block(p, q);
  int ker = int(blk.size()) - mc.rank(take_cols(mc.d(), blk));
  int im = 0;
  auto src = empty_or_block(A, p - 1, q - 1);
  if (!src.empty()) im = mc.rank(take_cols(mc.ddbar(), src));
  return ker - im;
}

CohomologyTable cohomology(const MetricContext& mc) {
  CohomologyTable out;
  const Algebra& A = mc.algebra();
  int n = A.n();
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      int h = mc.h_bc(p, q);
      int hq = bc_dim_quotient(mc, p, q);
      if (h != hq)
        throw Error("Bott-Chern dimension mismatch between Laplacian kernel (" +
                    std::to_string(h) + ") and quotient (" + std::to_string(hq) + ") at (" +
                    std::to_string(p) + "," + std::to_string(q) + ")");
      out.bc[{p, q}] = h;
      out.dolbeault[{p, q}] = mc.h_delbar(p, q);
    }
  for (int k = 0; k <= 2 * n; ++k) out.betti.push_back(mc.betti(k));
  return out;
}

int bc_dim_quotient_exact(const ExactOps& ex, int p, int q) {
  const Model& m = *ex.model;
  const Algebra& A = m.algebra();
  const auto& blk = A.block(p, q);
  int ker = int(blk.size()) - m.d_exact().select_cols(blk).rank();
  int im = 0;
  auto src = empty_or_block(A, p - 1, q - 1);
  if (!src.empty()) im = ex.ddbar.select_cols(src).rank();
  return ker - im;
}

int bc_dim_laplacian_exact(const ExactOps& ex, int p, int q) {
  const auto& blk = ex.model->algebra().block(p, q);
  exact::Matrix lap = ex.lap_bc.block(blk, blk);
  return int(blk.size()) - lap.rank();
}

int dolbeault_dim_exact(const ExactOps& ex, int p, int q) {
  const Model& m = *ex.model;
  const Algebra& A = m.algebra();
  const auto& blk = A.block(p, q);
  int ker = int(blk.size()) - m.delbar_exact().select_cols(blk).rank();
  int im = 0;
  auto src = empty_or_block(A, p, q - 1);
  if (!src.empty()) im = m.delbar_exact().select_cols(src).rank();
  return ker - im;
}

int derham_dim_exact(const ExactOps& ex, int k) {
  const Model& m = *ex.model;
  const Algebra& A = m.algebra();
  const auto& blk = A.degree(k);
  int ker = int(blk.size()) - m.d_exact().select_cols(blk).rank();
  int im = 0;
  if (k >= 1) im = m.d_exact().select_cols(A.degree(k - 1)).rank();
  return ker - im;
}

DdbarReport ddbar_check(const MetricContext& mc) {
  DdbarReport rep;
  const Algebra& A = mc.algebra();
  int n = A.n();
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      const auto& blk = A.block(p, q);
      // K = ker del ^ ker delbar inside the block (full-length columns).
      Eigen::MatrixXcd stacked =
          vcat(take_cols(mc.del(), blk), take_cols(mc.delbar(), blk));
      Eigen::MatrixXcd Klocal = kernel(stacked, mc.config().tol);
      Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(A.dim(), Klocal.cols());
      for (int i = 0; i < int(blk.size()); ++i) K.row(blk[i]) = Klocal.row(i);
      // S = Im del + Im delbar restricted to the block.
      Eigen::MatrixXcd S = hcat(take_cols(mc.del(), empty_or_block(A, p - 1, q)),
                                take_cols(mc.delbar(), empty_or_block(A, p, q - 1)));
      int dimK = int(K.cols());
      int dimS = mc.rank(S);
      int dimKS = mc.rank(hcat(K, S));
      int dim_int = dimK + dimS - dimKS;
      int dimE = mc.rank(take_cols(mc.ddbar(), empty_or_block(A, p - 1, q - 1)));
      bool ok = (dim_int == dimE);
      rep.blocks[{p, q}] = ok;
      if (!ok) {
        rep.failing.push_back({p, q});
        rep.overall = false;
      }
    }
  return rep;
}

SubspaceChart hodge_filtration(const MetricContext& mc, int p, int k, bool allow_degenerate) {
  const Algebra& A = mc.algebra();
  const Eigen::MatrixXcd& Hk = mc.harmonic_basis_d(k);
  Eigen::MatrixXcd cols(Hk.cols(), 0);
  int expected = 0;
  for (int r = std::min(A.n(), k); r >= std::max(p, k - A.n()); --r) {
    const Eigen::MatrixXcd& reps = mc.harmonic_basis_bc(r, k - r);
    expected += int(reps.cols());
    cols = hcat(cols, Hk.adjoint() * reps);
  }
  SubspaceChart ch = make_chart(cols, mc.config().tol, mc.config().pluecker_cap);
  if (ch.dim() < expected && !allow_degenerate)
    throw FiltrationDegenerate("F^" + std::to_string(p) + "H^" + std::to_string(k) +
                               " chart rank " + std::to_string(ch.dim()) + " < expected " +
                               std::to_string(expected) +
                               " (del-delbar hypothesis likely fails)");
  return ch;
}

int deformed_bc_dim(const MetricContext& mc, const Eigen::MatrixXcd& phi_at_t, int p, int q) {
  const Model& m = mc.model();
  const Algebra& A = m.algebra();
  const auto& blk = A.block(p, q);
  Eigen::MatrixXcd dphi = deformed_d_matrix(m, phi_at_t);
  Eigen::MatrixXcd ddbar_phi = m.del() * deformed_delbar_matrix(m, phi_at_t);
  int ker = int(blk.size()) - mc.rank(take_cols(dphi, blk));
  int im = 0;
  auto src = empty_or_block(A, p - 1, q - 1);
  if (!src.empty()) im = mc.rank(take_cols(ddbar_phi, src));
  return ker - im;
}

DeformedDims deformed_bc_dims(const MetricContext& mc, const Beltrami& phi,
                              const std::vector<Complex>& t) {
  const Model& m = mc.model();
  Eigen::MatrixXcd pt = phi.eval(t);
  if (!is_integrable(m, pt, mc.config().tol)) {
    std::string ts;
    for (Complex c : t) ts += "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
    throw NotIntegrableAt(ts);
  }
  DeformedDims out;
  for (int p = 0; p <= m.n(); ++p)
    for (int q = 0; q <= m.n(); ++q) out.dims[{p, q}] = deformed_bc_dim(mc, pt, p, q);
  return out;
}

int deformed_bc_dim_exact(const ExactOps& ex, const exact::Matrix& phi_at_t, int p, int q) {
  const Model& m = *ex.model;
  const Algebra& A = m.algebra();
  const auto& blk = A.block(p, q);
  exact::Matrix dphi = deformed_d_matrix_exact(m, phi_at_t);
  exact::Matrix ddbar_phi = m.del_exact() * deformed_delbar_matrix_exact(m, phi_at_t);
  int ker = int(blk.size()) - dphi.select_cols(blk).rank();
  int im = 0;
  auto src = empty_or_block(A, p - 1, q - 1);
  if (!src.empty()) im = ddbar_phi.select_cols(src).rank();
  return ker - im;
}

VuResult vu_diagnostics(const MetricContext& mc, const Beltrami& phi,
                        const std::vector<Complex>& t, int p, int q) {
  const Model& m = mc.model();
  const Algebra& A = m.algebra();
  Eigen::MatrixXcd pt = phi.eval(t);
  if (!is_integrable(m, pt, mc.config().tol)) {
    std::string ts;
    for (Complex c : t) ts += "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
    throw NotIntegrableAt(ts);
  }
  const auto& blk = A.block(p, q);
  int h = mc.h_bc(p, q);
  Eigen::MatrixXcd dphi = deformed_d_matrix(m, pt);
  Eigen::MatrixXcd ddbar_phi = m.del() * deformed_delbar_matrix(m, pt);

  VuResult out;
  // v: kernel of [d_phi; (del delbar)*] restricted to the block.
  Eigen::MatrixXcd stacked = vcat(take_cols(dphi, blk), take_cols(mc.ddbar_star(), blk));
  int dim_ker = int(blk.size()) - mc.rank(stacked);
  out.v = h - dim_ker;

  // u: kernel of del delbar_phi inside H_BC + Im (del delbar)*.
  Eigen::MatrixXcd S = hcat(mc.harmonic_basis_bc(p, q),
                            take_cols(mc.ddbar_star(), empty_or_block(A, p + 1, q + 1)));
  Eigen::MatrixXcd BS = orth(S, mc.config().tol);
  int dim_int = int(BS.cols()) - mc.rank(ddbar_phi * BS);
  out.u = h - dim_int;
  return out;
}

VuResult vu_diagnostics_exact(const ExactOps& ex, const exact::Matrix& phi_at_t, int p, int q) {
  const Model& m = *ex.model;
  const Algebra& A = m.algebra();
  const auto& blk = A.block(p, q);
  exact::Matrix lap = ex.lap_bc.block(blk, blk);
  exact::Matrix harm = embed_rows_exact(lap.kernel_basis(), blk, A.dim());
  int h = harm.cols();
  exact::Matrix dphi = deformed_d_matrix_exact(m, phi_at_t);
  exact::Matrix ddbar_phi = m.del_exact() * deformed_delbar_matrix_exact(m, phi_at_t);

  VuResult out;
  exact::Matrix stacked =
      exact::Matrix::vcat(dphi.select_cols(blk), ex.ddbar_star.select_cols(blk));
  int dim_ker = int(blk.size()) - stacked.rank();
  out.v = h - dim_ker;

  exact::Matrix S = harm;
  auto src = empty_or_block(A, p + 1, q + 1);
  if (!src.empty()) S = exact::Matrix::hcat(S, ex.ddbar_star.select_cols(src));
  exact::Matrix BS = S.column_space_basis();
  int dim_int = BS.cols() - (ddbar_phi * BS).rank();
  out.u = h - dim_int;
  return out;
}

}  // namespace hodgevar
