#ifndef HODGEVAR_PERIOD_HPP
#define HODGEVAR_PERIOD_HPP

#include <map>
#include <vector>

#include "hodgevar/canonical.hpp"
#include "hodgevar/cohomology.hpp"
#include "hodgevar/deformation.hpp"
#include "hodgevar/subspace.hpp"

namespace hodgevar {

// de Rham class coordinates of a closed k-form in the harmonic basis.
Eigen::VectorXcd class_coords(const MetricContext& mc, int k, const Form& f);

// Chart of H^k = (+)_{a+b=k} H^{a,b}_BC in de Rham coordinates, blocks in
// descending holomorphic degree.
struct HodgeDecomposition {
  int k = 0;
  Eigen::MatrixXcd M;     // columns = class coordinates of BC harmonic bases
  Eigen::MatrixXcd Minv;  // pseudo-inverse
  struct Block {
    int a, b, offset, size;
  };
  std::vector<Block> blocks;
  const Block* find(int a, int b) const {
    for (const auto& blk : blocks)
      if (blk.a == a && blk.b == b) return &blk;
    return nullptr;
  }
};
HodgeDecomposition hodge_decomposition(const MetricContext& mc, int k);

struct PeriodPoint {
  int p = 0, k = 0;
  std::vector<Complex> t;
  SubspaceChart chart;               // F^p H^k(X_t) in H^k(X) coordinates
  std::vector<std::string> labels;   // generator labels sigma^l
  double closure_residual = 0.0;     // max || d e^{i_phi} sigma^l(t) ||
  int expected_dim = 0;              // f^{p,k} on del-delbar models
};

// The iota map of the Kodaira-Spencer diagram:
//   x -> (i_phi x - delbar u) - H_BC del u,  u = (del delbar)* G_BC del i_phi x.
struct IotaResult {
  Eigen::VectorXcd c1, c2;  // class coordinates in H^{r-1,k-r+1}_BC, H^{r,k-r}_BC
  Form f1, f2;
};
IotaResult iota_map(const MetricContext& mc, const VectorValuedForm& phi1, const Form& x);

// Constructive decomposition sigma = d x + sum_{r>=p} beta^{r,k-r} on a
// del-delbar model.
struct PpbarDecomposition {
  Form x;
  std::vector<std::pair<Bidegree, Form>> betas;
  double residual = 0.0;
};
PpbarDecomposition ppbar_decompose(const MetricContext& mc, const Form& sigma, int p,
                                   bool allow_non_ddbar = false,
                                   const DdbarReport* ddbar = nullptr);

// Period-map computations for one (model, family) pair.  Canonical
// deformations and their exponential images are cached per bidegree block.
class PeriodEngine {
 public:
  PeriodEngine(const MetricContext& mc, const Beltrami& phi);

  const MetricContext& metric() const { return mc_; }
  const Beltrami& family() const { return phi_; }

  // Canonical deformations of the BC-harmonic basis of block (r,s).
  const std::vector<CanonicalDeformation>& block_deformations(int r, int s);
  // e^{i_phi} sigma^l(t) as a series, same indexing.
  const std::vector<FormSeries>& block_exp_series(int r, int s);

  PeriodPoint period_point(int p, int k, const std::vector<Complex>& t,
                           bool allow_rank_drop = false);
  // Independent route: F^p H^k(X_t) from the deformed bigrading, using the
  // deformed-coframe metric, without series or canonical deformations.
  SubspaceChart fph_direct(int p, int k, const std::vector<Complex>& t);

  // Norm of the component of d/dt_i [e^{i_phi} sigma^l(t)]|_0 orthogonal to
  // F^{p-1} H^k, max over generators.
  double transversality_residual(int p, int k, int dir);

  // Cauchy-Riemann defect of the Pluecker trajectory in the affine chart of
  // the pivot coordinate, centered at t0.
  double holomorphy_residual(int p, int k, const std::vector<Complex>& t0, int dir = 0);

  // Difference between the derivative of the period map and the iota route
  // through the Kodaira-Spencer class, max over generators.
  double diagram_residual(int p, int k, int dir);

  HodgeDecomposition& hodge(int k);

 private:
  Eigen::VectorXcd raw_pluecker(int p, int k, const std::vector<Complex>& t);

  const MetricContext& mc_;
  const Beltrami& phi_;
  std::map<std::pair<int, int>, std::vector<CanonicalDeformation>> defs_;
  std::map<std::pair<int, int>, std::vector<FormSeries>> exps_;
  std::map<int, HodgeDecomposition> hodge_;
};

}  // namespace hodgevar

#endif
