#ifndef HODGEVAR_COHOMOLOGY_HPP
#define HODGEVAR_COHOMOLOGY_HPP

#include <map>
#include <optional>
#include <vector>

#include "hodgevar/deformation.hpp"
#include "hodgevar/metric.hpp"
#include "hodgevar/subspace.hpp"

namespace hodgevar {

// Exact-arithmetic operator bundle; built once per model, then shared by
// all exact rank oracles.
struct ExactOps {
  const Model* model = nullptr;
  exact::Matrix ddbar, ddbar_star, lap_bc, lap_delbar;
  static ExactOps build(const Model& m);
};

// One cohomology group with harmonic representatives and the coordinate map
// sending a closed form to its class coordinates in the harmonic basis.
struct CohomologySpace {
  Theory theory;
  int p = -1, q = -1, k = -1;
  int dim = 0;
  Eigen::MatrixXcd reps;  // orthonormal harmonic columns, full length
  Eigen::VectorXcd coordinates(const Form& f) const { return reps.adjoint() * f.coeffs(); }
};

CohomologySpace cohomology_space(const MetricContext& mc, Theory th, int p_or_k, int q = -1);

// Dimension tables.  Bott-Chern dimensions are checked against the quotient
// definition; a mismatch means an internal inconsistency and throws.
struct CohomologyTable {
  std::map<std::pair<int, int>, int> bc, dolbeault;
  std::vector<int> betti;
};
CohomologyTable cohomology(const MetricContext& mc);

// Quotient-definition dimensions, float and exact backends.
int bc_dim_quotient(const MetricContext& mc, int p, int q);
int bc_dim_quotient_exact(const ExactOps& ex, int p, int q);
int bc_dim_laplacian_exact(const ExactOps& ex, int p, int q);
int dolbeault_dim_exact(const ExactOps& ex, int p, int q);
int derham_dim_exact(const ExactOps& ex, int k);

// Per-bidegree del-delbar lemma test:
// ker del ^ ker delbar ^ (Im del + Im delbar) == Im del delbar.
struct DdbarReport {
  std::map<std::pair<int, int>, bool> blocks;
  std::vector<std::pair<int, int>> failing;
  bool overall = true;
};
DdbarReport ddbar_check(const MetricContext& mc);

// F^p H^k as a chart in de Rham harmonic coordinates (image of Bott-Chern
// classes with holomorphic degree >= p).
SubspaceChart hodge_filtration(const MetricContext& mc, int p, int k,
                               bool allow_degenerate = false);

// Deformed Bott-Chern dimensions at a sample point.
struct DeformedDims {
  std::map<std::pair<int, int>, int> dims;
};
DeformedDims deformed_bc_dims(const MetricContext& mc, const Beltrami& phi,
                              const std::vector<Complex>& t);
int deformed_bc_dim(const MetricContext& mc, const Eigen::MatrixXcd& phi_at_t, int p, int q);
int deformed_bc_dim_exact(const ExactOps& ex, const exact::Matrix& phi_at_t, int p, int q);

// Dimension diagnostics of the deformed Bott-Chern theory:
//   v = h_BC - dim(ker d_phi ^ ker (del delbar)* ^ A^{p,q})
//   u = h_BC - dim(ker del delbar_phi ^ (H_BC + Im (del delbar)*) ^ A^{p,q})
struct VuResult {
  int v = 0;
  int u = 0;
};
VuResult vu_diagnostics(const MetricContext& mc, const Beltrami& phi,
                        const std::vector<Complex>& t, int p, int q);
VuResult vu_diagnostics_exact(const ExactOps& ex, const exact::Matrix& phi_at_t, int p, int q);

}  // namespace hodgevar

#endif
