#ifndef HODGEVAR_FORM_HPP
#define HODGEVAR_FORM_HPP

#include <Eigen/Dense>
#include <optional>
#include <set>
#include <string>

#include "hodgevar/algebra.hpp"
#include "hodgevar/config.hpp"
#include "hodgevar/errors.hpp"

namespace hodgevar {

// Element of the invariant exterior algebra: a dense coefficient vector over
// the canonical monomial basis.  A default-constructed Form is the zero form
// of any algebra, which keeps series arithmetic free of explicit zeros.
class Form {
 public:
  Form() = default;
  explicit Form(const Algebra& alg) : alg_(&alg), v_(Eigen::VectorXcd::Zero(alg.dim())) {}
  Form(const Algebra& alg, Eigen::VectorXcd v) : alg_(&alg), v_(std::move(v)) {}

  static Form monomial(const Algebra& alg, Mask I, Mask J, Complex c = Complex(1, 0)) {
    Form f(alg);
    f.v_[alg.id_of(I, J)] = c;
    return f;
  }
  static Form basis(const Algebra& alg, int id, Complex c = Complex(1, 0)) {
    Form f(alg);
    f.v_[id] = c;
    return f;
  }

  const Algebra* algebra() const { return alg_; }
  bool is_unset() const { return alg_ == nullptr; }
  const Eigen::VectorXcd& coeffs() const { return v_; }
  Eigen::VectorXcd& coeffs() { return v_; }
  Complex coeff(int id) const { return alg_ ? v_[id] : Complex(0, 0); }

  double norm() const { return alg_ ? v_.norm() : 0.0; }

  // Bidegrees carrying coefficients above the threshold.
  std::set<std::pair<int, int>> bidegrees(double eps = 1e-14) const;
  // The single bidegree of a pure-type form, if it is one.
  std::optional<Bidegree> pure_type(double eps = 1e-12) const;
  // Coefficients restricted to one block, in the block's canonical order.
  Eigen::VectorXcd block(int p, int q) const;
  // Zero outside the given block.
  Form projected(int p, int q) const;

  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form operator*(Complex c) const;
  Form operator-() const { return *this * Complex(-1, 0); }

  std::string describe(double eps = 1e-12) const;

 private:
  const Algebra* alg_ = nullptr;
  Eigen::VectorXcd v_;
};

inline Form operator*(Complex c, const Form& f) { return f * c; }

Form wedge(const Form& a, const Form& b);
Form conjugate(const Form& a);

}  // namespace hodgevar

#endif
