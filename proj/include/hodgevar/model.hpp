#ifndef HODGEVAR_MODEL_HPP
#define HODGEVAR_MODEL_HPP

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "hodgevar/algebra.hpp"
#include "hodgevar/exact.hpp"
#include "hodgevar/form.hpp"

namespace hodgevar {

enum class TermKind { hol, mix, anti };

// One term of a structure equation: c * w^i /\ w^j (hol), c * w^i /\ w~^j
// (mix) or c * w~^i /\ w~^j (anti).
struct DTerm {
  Complex c;
  TermKind kind;
  int i = 0;
  int j = 0;
};

enum class Diff { d, del, delbar };

// Invariant-form model of a compact complex manifold: a coframe w^1..w^n
// with structure equations for d, extended to conjugates and to all
// monomials by the Leibniz rule.  All operator matrices are built once at
// construction and the object is immutable afterwards.
class Model {
 public:
  Model(std::string name, int n, std::vector<std::vector<DTerm>> d_table);

  static Model load(const std::string& json_text);
  static Model load_file(const std::string& path);

  const std::string& name() const { return name_; }
  int n() const { return alg_->n(); }
  const Algebra& algebra() const { return *alg_; }
  const std::vector<std::vector<DTerm>>& d_table() const { return d_table_; }

  // Global operator matrices on the full monomial basis.
  const Eigen::MatrixXcd& d() const { return d_; }
  const Eigen::MatrixXcd& del() const { return del_; }
  const Eigen::MatrixXcd& delbar() const { return delbar_; }

  const exact::Matrix& d_exact() const { return d_ex_; }
  const exact::Matrix& del_exact() const { return del_ex_; }
  const exact::Matrix& delbar_exact() const { return delbar_ex_; }

  // Mixed structure coefficients B[gamma](k,b) = coefficient of w^k /\ w~^b
  // in d w^gamma; these drive the T^{1,0}-valued Dolbeault operator.
  const std::vector<Eigen::MatrixXcd>& mixed_coeffs() const { return B_; }

  // Structural expansion of the contraction i_phi as a derivation:
  // entry (row, col) receives sign * phi(alpha, beta).
  struct ContractionTerm {
    int row, col, alpha, beta, sign;
  };
  const std::vector<ContractionTerm>& contraction_terms() const { return c_terms_; }

  Eigen::MatrixXcd contraction_matrix(const Eigen::MatrixXcd& phi) const;
  exact::Matrix contraction_matrix_exact(const exact::Matrix& phi) const;

  // Exact d*d == 0 check; returns the offending monomial name, empty if fine.
  std::string integrability_defect_exact() const;

  std::string to_json() const;

 private:
  void build_differentials();
  void build_contraction_terms();

  std::string name_;
  std::shared_ptr<const Algebra> alg_;
  std::vector<std::vector<DTerm>> d_table_;
  Eigen::MatrixXcd d_, del_, delbar_;
  exact::Matrix d_ex_, del_ex_, delbar_ex_;
  std::vector<Eigen::MatrixXcd> B_;
  std::vector<ContractionTerm> c_terms_;
};

Model load_model(const std::string& json_text);
Form differential(const Model& m, Diff which, const Form& a);

// The model with coframe w^a replaced by s_a w^a.  Declaring the rescaled
// coframe orthonormal realizes the Hermitian metric sum s_a^2 w^a x w~^a on
// the original model, so metric dependence can be probed without touching
// the operator machinery.
Model rescale_coframe(const Model& m, const std::vector<double>& s);

}  // namespace hodgevar

#endif
