#ifndef HODGEVAR_DEFORMATION_HPP
#define HODGEVAR_DEFORMATION_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hodgevar/metric.hpp"
#include "hodgevar/model.hpp"
#include "hodgevar/series.hpp"

namespace hodgevar {

// Beltrami differential phi(t) = phi^a_b(t) w~^b x e_a as a truncated power
// series of n x n coefficient matrices; phi(0) = 0 for deformation families.
class Beltrami {
 public:
  Beltrami(int n, int m, int N) : n_(n), s_(m, N) {}

  static Beltrami load(const std::string& json_text, int n);
  static Beltrami load_file(const std::string& path, int n);

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  int params() const { return s_.params(); }
  int order() const { return s_.order(); }
  const Series<Eigen::MatrixXcd>& series() const { return s_; }

  void add_term(const std::vector<int>& exponent, int alpha, int beta, Complex c);

  // Coefficient matrix at a sample point.
  Eigen::MatrixXcd eval(const std::vector<Complex>& t) const;
  exact::Matrix eval_exact(const std::vector<exact::Scalar>& t) const;
  // Degree-one coefficient in parameter direction `dir` (0-based).
  Eigen::MatrixXcd degree1(int dir) const;

  std::string to_json() const;

 private:
  std::string name_ = "family";
  int n_;
  Series<Eigen::MatrixXcd> s_;
};

// T^{1,0}-valued form: one Form component per frame vector e_1..e_n.
struct VectorValuedForm {
  std::vector<Form> comp;
  double norm() const {
    double s = 0;
    for (const Form& f : comp) s += f.norm() * f.norm();
    return std::sqrt(s);
  }
};

// Constant (0,1)-type vector-valued form <-> coefficient matrix phi(a,b).
VectorValuedForm matrix_to_vv(const Model& m, const Eigen::MatrixXcd& phi);
Eigen::MatrixXcd vv_to_matrix(const Model& m, const VectorValuedForm& v);
// Stacked coordinates for the vector-valued Dolbeault complex on (0,q).
Eigen::VectorXcd vv_coords(const Model& m, int q, const VectorValuedForm& v);
VectorValuedForm vv_from_coords(const Model& m, int q, const Eigen::VectorXcd& x);

// Contraction i_phi at a sample point and lifted to series.
Form contract(const Model& m, const Eigen::MatrixXcd& phi, const Form& a);
FormSeries contract(const Model& m, const Beltrami& phi, const FormSeries& a);

// Exponential e^{i_phi}: finite sum, i_phi is nilpotent.
Eigen::MatrixXcd exp_contraction_matrix(const Model& m, const Eigen::MatrixXcd& phi);
Form exp_contract(const Model& m, const Eigen::MatrixXcd& phi, const Form& a);
FormSeries exp_contract(const Model& m, const Beltrami& phi, const FormSeries& a);

// Deformed operators at a sample point:
//   d_phi = del + delbar_phi,  delbar_phi = delbar - (i_phi del - del i_phi).
Eigen::MatrixXcd lie_hol_matrix(const Model& m, const Eigen::MatrixXcd& phi);
Eigen::MatrixXcd deformed_delbar_matrix(const Model& m, const Eigen::MatrixXcd& phi);
Eigen::MatrixXcd deformed_d_matrix(const Model& m, const Eigen::MatrixXcd& phi);
Form deformed_delbar(const Model& m, const Eigen::MatrixXcd& phi, const Form& a);
Form deformed_d(const Model& m, const Eigen::MatrixXcd& phi, const Form& a);

exact::Matrix lie_hol_matrix_exact(const Model& m, const exact::Matrix& phi);
exact::Matrix deformed_delbar_matrix_exact(const Model& m, const exact::Matrix& phi);
exact::Matrix deformed_d_matrix_exact(const Model& m, const exact::Matrix& phi);

// Deformed coframe eta^a = w^a + i_phi w^a as Forms.
std::vector<Form> deformed_coframe(const Model& m, const Eigen::MatrixXcd& phi);

// Smallest singular value of the (eta, eta~) frame, for degeneracy tests.
double frame_smallest_sv(const Eigen::MatrixXcd& phi);

// max_a || d eta^a /\ eta^1 /\ ... /\ eta^n ||; zero iff the deformed (1,0)
// distribution is integrable.  Throws FrameDegenerate.
double integrability_residual(const Model& m, const Eigen::MatrixXcd& phi);
bool is_integrable(const Model& m, const Eigen::MatrixXcd& phi, double tol);

// Deformed bigrading: monomials in eta, eta~ as a new basis, with the
// differential transported to deformed coordinates and its bidegree parts.
struct DeformedFrame {
  Eigen::MatrixXcd basis;      // column j = deformed monomial j in original coordinates
  Eigen::MatrixXcd basis_inv;
  Eigen::MatrixXcd d_eta;      // basis_inv * d * basis
  Eigen::MatrixXcd del_t, delbar_t;  // bidegree projections of d_eta
};
DeformedFrame deformed_bigrading(const Model& m, const Eigen::MatrixXcd& phi, double tol);

// Kodaira-Spencer representative: the delbar-harmonic projection of the
// degree-one coefficient of the family in the given parameter direction.
VectorValuedForm ks_class(const MetricContext& mc, const Beltrami& phi, int dir);

}  // namespace hodgevar

#endif
