#ifndef HODGEVAR_CANONICAL_HPP
#define HODGEVAR_CANONICAL_HPP

#include <vector>

#include "hodgevar/cohomology.hpp"
#include "hodgevar/deformation.hpp"
#include "hodgevar/metric.hpp"

namespace hodgevar {

// sigma(t) = sum_k sigma_k with
//   sigma_k = -G_BC (delbar* del del* + delbar*) sum_{i+j=k} del i_{phi_j} sigma_i,
// the unique formal solution of the canonical fixed-point equation.
struct CanonicalDeformation {
  Bidegree pq;
  Form sigma0;
  FormSeries series;  // includes the degree-0 term sigma0
  // Norm of the homogeneous piece per total degree, for convergence reports.
  std::vector<double> degree_norms;
};

CanonicalDeformation canonical_deformation(const MetricContext& mc, const Form& sigma0,
                                           const Beltrami& phi, int order);

// Max coefficient norm of sigma - sigma0 + G_BC(delbar* del del* + delbar*)
// del i_phi sigma through the truncation order.
double fixed_point_residual(const MetricContext& mc, const CanonicalDeformation& cd,
                            const Beltrami& phi);

// || d_{phi(t)} sigma(t) || at a sample point.
double closedness_residual(const MetricContext& mc, const CanonicalDeformation& cd,
                           const Beltrami& phi, const std::vector<Complex>& t);

// Evaluated canonical deformations of a list of harmonic forms.
struct FtildeResult {
  Eigen::MatrixXcd columns;                 // full-length evaluated sigma^l(t)
  int rank = 0;
  std::vector<double> ddbar_star_residual;  // ||(del delbar)* sigma^l(t)|| per column
};
FtildeResult ftilde_eval(const MetricContext& mc, const std::vector<Form>& sigma0s,
                         const Beltrami& phi, const std::vector<Complex>& t, int order);

// Residual of sigma_k against the column space of the recursion operator,
// which every correction term must lie in.
double recursion_image_residual(const MetricContext& mc, const CanonicalDeformation& cd);

}  // namespace hodgevar

#endif
