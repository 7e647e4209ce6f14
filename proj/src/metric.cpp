#include "hodgevar/metric.hpp"

#include <cmath>

namespace hodgevar {

BlockOp adjoint(const BlockOp& L) { return {L.dst, L.src, L.M.adjoint()}; }

namespace {

// Kernel projector, Green operator and orthonormal kernel basis of one
// Hermitian PSD block, via its spectral decomposition.
struct SpectralParts {
  Eigen::MatrixXcd green, proj, kernel;
  double smallest_nonzero = 0.0;
  double largest = 0.0;
};

SpectralParts spectral_parts(const Eigen::MatrixXcd& lap, double tol) {
  SpectralParts out;
  int n = int(lap.rows());
  if (n == 0) {
    out.green = out.proj = Eigen::MatrixXcd(0, 0);
    out.kernel = Eigen::MatrixXcd(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lap);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const Eigen::MatrixXcd& V = es.eigenvectors();
  out.largest = std::max(ev[n - 1], 0.0);
  double cut = tol * std::max(out.largest, 1.0);
  int k = 0;
  while (k < n && ev[k] <= cut) ++k;
  out.kernel = V.leftCols(k);
  out.proj = out.kernel * out.kernel.adjoint();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
  for (int i = k; i < n; ++i) inv[i] = 1.0 / ev[i];
  out.green = V * inv.asDiagonal() * V.adjoint();
  out.smallest_nonzero = (k < n) ? ev[k] : 0.0;
  return out;
}

}  // namespace

MetricContext::MetricContext(const Model& m, Config cfg) : model_(m), cfg_(cfg) {
  const Algebra& A = m.algebra();
  const int dim = A.dim();
  const int n = A.n();

  d_star_ = m.d().adjoint();
  del_star_ = m.del().adjoint();
  delbar_star_ = m.delbar().adjoint();
  ddbar_ = m.del() * m.delbar();
  ddbar_star_ = ddbar_.adjoint();

  Eigen::MatrixXcd T = delbar_star_ * m.del();
  lap_bc_ = ddbar_ * ddbar_star_ + ddbar_star_ * ddbar_ + T * T.adjoint() + T.adjoint() * T +
            delbar_star_ * m.delbar() + del_star_ * m.del();
  lap_db_ = m.delbar() * delbar_star_ + delbar_star_ * m.delbar();
  lap_d_ = m.d() * d_star_ + d_star_ * m.d();

  green_bc_ = Eigen::MatrixXcd::Zero(dim, dim);
  hproj_bc_ = Eigen::MatrixXcd::Zero(dim, dim);
  hproj_db_ = Eigen::MatrixXcd::Zero(dim, dim);
  hproj_d_ = Eigen::MatrixXcd::Zero(dim, dim);

  auto embed = [&](Eigen::MatrixXcd& glob, const Eigen::MatrixXcd& blk,
                   const std::vector<int>& idx) {
    for (int i = 0; i < int(idx.size()); ++i)
      for (int j = 0; j < int(idx.size()); ++j) glob(idx[i], idx[j]) = blk(i, j);
  };
  auto embed_basis = [&](const Eigen::MatrixXcd& cols, const std::vector<int>& idx) {
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, cols.cols());
    for (int i = 0; i < int(idx.size()); ++i) full.row(idx[i]) = cols.row(i);
    return full;
  };

  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      const auto& idx = A.block(p, q);
      Eigen::MatrixXcd bc = take_block(lap_bc_, idx, idx);
      SpectralParts sp = spectral_parts(bc, cfg_.tol);
      if (sp.smallest_nonzero > 0 &&
          sp.smallest_nonzero < cfg_.green_floor * std::max(sp.largest, 1.0))
        warnings_.push_back("ill-conditioned Bott-Chern Laplacian on block (" +
                            std::to_string(p) + "," + std::to_string(q) + "), smallest nonzero " +
                            std::to_string(sp.smallest_nonzero));
      embed(green_bc_, sp.green, idx);
      embed(hproj_bc_, sp.proj, idx);
      basis_bc_[{p, q}] = embed_basis(sp.kernel, idx);

      Eigen::MatrixXcd db = take_block(lap_db_, idx, idx);
      SpectralParts sd = spectral_parts(db, cfg_.tol);
      embed(hproj_db_, sd.proj, idx);
      basis_db_[{p, q}] = embed_basis(sd.kernel, idx);
    }
  }

  for (int k = 0; k <= 2 * n; ++k) {
    const auto& idx = A.degree(k);
    Eigen::MatrixXcd dk = take_block(lap_d_, idx, idx);
    SpectralParts sp = spectral_parts(dk, cfg_.tol);
    embed(hproj_d_, sp.proj, idx);
    basis_d_[k] = embed_basis(sp.kernel, idx);
  }

  recursion_ = -green_bc_ * (delbar_star_ * m.del() * del_star_ + delbar_star_);

  // T^{1,0}-valued Dolbeault complex.
  vv_delbar_.resize(n + 1);
  vv_hproj_.resize(n + 1);
  std::vector<int> local(dim, -1);
  auto local_index = [&](int q) {
    std::fill(local.begin(), local.end(), -1);
    const auto& ids = A.block(0, q);
    for (int i = 0; i < int(ids.size()); ++i) local[ids[i]] = i;
  };
  const auto& B = m.mixed_coeffs();
  for (int q = 0; q <= n; ++q) {
    const auto& src = A.block(0, q);
    int rows = (q + 1 <= n) ? int(A.block(0, q + 1).size()) * n : 0;
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(rows, int(src.size()) * n);
    if (q + 1 <= n) {
      local_index(q + 1);
      double sgn = (q % 2 == 0) ? 1.0 : -1.0;
      for (int mi = 0; mi < int(src.size()); ++mi) {
        int id = src[mi];
        for (int k = 1; k <= n; ++k) {
          int col = mi * n + (k - 1);
          // delbar acting on the form factor
          for (int row_id = 0; row_id < dim; ++row_id) {
            Complex c = m.delbar()(row_id, id);
            if (c != Complex(0, 0) && local[row_id] >= 0)
              D(local[row_id] * n + (k - 1), col) += c;
          }
          // (-1)^q  w~^J /\ delbar e_k,  delbar e_k = sum B[g](k,b) w~^b x e_g
          for (int g = 1; g <= n; ++g)
            for (int b = 1; b <= n; ++b) {
              Complex c = B[g - 1](k - 1, b - 1);
              if (c == Complex(0, 0)) continue;
              auto [s, id3] = A.mul(id, A.id_of(0, index_bit(b)));
              if (s == 0 || local[id3] < 0) continue;
              D(local[id3] * n + (g - 1), col) += sgn * double(s) * c;
            }
        }
      }
    }
    vv_delbar_[q] = D;
  }
  for (int q = 0; q <= n; ++q) {
    int sz = int(A.block(0, q).size()) * n;
    Eigen::MatrixXcd lap = Eigen::MatrixXcd::Zero(sz, sz);
    lap += vv_delbar_[q].adjoint() * vv_delbar_[q];
    if (q > 0) lap += vv_delbar_[q - 1] * vv_delbar_[q - 1].adjoint();
    vv_hproj_[q] = spectral_parts(lap, cfg_.tol).proj;
  }
}

Complex MetricContext::inner(const Form& a, const Form& b) const {
  if (a.is_unset() || b.is_unset()) return {0, 0};
  auto degree_of = [&](const Form& f) {
    int k = -1;
    for (auto [p, q] : f.bidegrees()) {
      if (k >= 0 && k != p + q) throw DegreeMismatch("form is not of pure total degree");
      k = p + q;
    }
    return k;
  };
  int ka = degree_of(a), kb = degree_of(b);
  if (ka >= 0 && kb >= 0 && ka != kb)
    throw DegreeMismatch("inner product of degrees " + std::to_string(ka) + " and " +
                         std::to_string(kb));
  return b.coeffs().dot(a.coeffs());
}

Eigen::MatrixXcd MetricContext::block_square(const Eigen::MatrixXcd& glob, int p, int q) const {
  const auto& idx = algebra().block(p, q);
  return take_block(glob, idx, idx);
}

BlockOp MetricContext::laplacian_bc(int p, int q) const {
  return {{p, q}, {p, q}, block_square(lap_bc_, p, q)};
}

std::pair<BlockOp, BlockOp> MetricContext::green_bc(int p, int q) const {
  return {BlockOp{{p, q}, {p, q}, block_square(green_bc_, p, q)},
          BlockOp{{p, q}, {p, q}, block_square(hproj_bc_, p, q)}};
}

BlockOp MetricContext::harmonic_projection(Theory th, int p, int q) const {
  switch (th) {
    case Theory::bc:
      return {{p, q}, {p, q}, block_square(hproj_bc_, p, q)};
    case Theory::delbar:
      return {{p, q}, {p, q}, block_square(hproj_db_, p, q)};
    default: {
      int k = p;  // first argument is the total degree for de Rham
      const auto& idx = algebra().degree(k);
      return {{k, -1}, {k, -1}, take_block(hproj_d_, idx, idx)};
    }
  }
}

const Eigen::MatrixXcd& MetricContext::harmonic_basis_bc(int p, int q) const {
  return basis_bc_.at({p, q});
}
const Eigen::MatrixXcd& MetricContext::harmonic_basis_delbar(int p, int q) const {
  return basis_db_.at({p, q});
}
const Eigen::MatrixXcd& MetricContext::harmonic_basis_d(int k) const { return basis_d_.at(k); }

}  // namespace hodgevar
