#ifndef HODGEVAR_METRIC_HPP
#define HODGEVAR_METRIC_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "hodgevar/config.hpp"
#include "hodgevar/linalg.hpp"
#include "hodgevar/model.hpp"

namespace hodgevar {

// Operator between two bidegree blocks, in the blocks' monomial bases.
struct BlockOp {
  Bidegree src;
  Bidegree dst;
  Eigen::MatrixXcd M;
};

BlockOp adjoint(const BlockOp& L);

enum class Theory { bc, delbar, derham };

// Hermitian structure with the invariant coframe declared orthonormal, plus
// every cached operator derived from it: adjoints, the three Laplacians,
// harmonic projections and Green operators.  Caches are built eagerly at
// construction; the object is immutable and freely shareable afterwards.
class MetricContext {
 public:
  explicit MetricContext(const Model& m, Config cfg = {});

  const Model& model() const { return model_; }
  const Config& config() const { return cfg_; }
  const Algebra& algebra() const { return model_.algebra(); }

  // Hermitian inner product, linear in the first argument.
  Complex inner(const Form& a, const Form& b) const;

  // Global matrices on the full monomial basis.
  const Eigen::MatrixXcd& d() const { return model_.d(); }
  const Eigen::MatrixXcd& del() const { return model_.del(); }
  const Eigen::MatrixXcd& delbar() const { return model_.delbar(); }
  const Eigen::MatrixXcd& d_star() const { return d_star_; }
  const Eigen::MatrixXcd& del_star() const { return del_star_; }
  const Eigen::MatrixXcd& delbar_star() const { return delbar_star_; }
  const Eigen::MatrixXcd& ddbar() const { return ddbar_; }
  const Eigen::MatrixXcd& ddbar_star() const { return ddbar_star_; }

  // Bott-Chern Laplacian and friends as global, block-diagonal matrices.
  const Eigen::MatrixXcd& lap_bc() const { return lap_bc_; }
  const Eigen::MatrixXcd& lap_delbar() const { return lap_db_; }
  const Eigen::MatrixXcd& lap_d() const { return lap_d_; }
  const Eigen::MatrixXcd& green_bc_global() const { return green_bc_; }
  const Eigen::MatrixXcd& hproj_bc_global() const { return hproj_bc_; }
  const Eigen::MatrixXcd& hproj_delbar_global() const { return hproj_db_; }
  const Eigen::MatrixXcd& hproj_d_global() const { return hproj_d_; }

  // -G_BC (delbar* del del* + delbar*), the canonical recursion operator.
  const Eigen::MatrixXcd& recursion_op() const { return recursion_; }

  // Per-block views.
  BlockOp laplacian_bc(int p, int q) const;
  std::pair<BlockOp, BlockOp> green_bc(int p, int q) const;
  BlockOp harmonic_projection(Theory th, int p, int q = -1) const;

  // Orthonormal harmonic bases as full-length columns.
  const Eigen::MatrixXcd& harmonic_basis_bc(int p, int q) const;
  const Eigen::MatrixXcd& harmonic_basis_delbar(int p, int q) const;
  const Eigen::MatrixXcd& harmonic_basis_d(int k) const;

  int h_bc(int p, int q) const { return int(harmonic_basis_bc(p, q).cols()); }
  int h_delbar(int p, int q) const { return int(harmonic_basis_delbar(p, q).cols()); }
  int betti(int k) const { return int(harmonic_basis_d(k).cols()); }

  // T^{1,0}-valued Dolbeault complex on (0,q) blocks; coordinates are
  // monomial-major, frame-minor: id = mono_local * n + (frame-1).
  const Eigen::MatrixXcd& vv_delbar(int q) const { return vv_delbar_[q]; }
  const Eigen::MatrixXcd& vv_hproj(int q) const { return vv_hproj_[q]; }

  int rank(const Eigen::MatrixXcd& M) const { return numeric_rank(M, cfg_.tol); }

  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Eigen::MatrixXcd block_square(const Eigen::MatrixXcd& glob, int p, int q) const;

  const Model& model_;
  Config cfg_;
  Eigen::MatrixXcd d_star_, del_star_, delbar_star_, ddbar_, ddbar_star_;
  Eigen::MatrixXcd lap_bc_, lap_db_, lap_d_;
  Eigen::MatrixXcd green_bc_, hproj_bc_, hproj_db_, hproj_d_;
  Eigen::MatrixXcd recursion_;
  std::map<std::pair<int, int>, Eigen::MatrixXcd> basis_bc_, basis_db_;
  std::map<int, Eigen::MatrixXcd> basis_d_;
  std::vector<Eigen::MatrixXcd> vv_delbar_, vv_hproj_;
  std::vector<std::string> warnings_;
};

}  // namespace hodgevar

#endif
