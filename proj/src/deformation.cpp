#include "hodgevar/deformation.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace hodgevar {

using nlohmann::ordered_json;

Beltrami Beltrami::load(const std::string& json_text, int n) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw MalformedSpec(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("m") || !j.contains("terms"))
    throw MalformedSpec("family file needs fields \"m\" and \"terms\"");
  int m = j.at("m").get<int>();
  int N = j.value("N", 6);
  if (m < 1) throw MalformedSpec("family needs m >= 1 parameters");
  Beltrami out(n, m, N);
  out.name_ = j.value("name", std::string("family"));
  for (const auto& t : j.at("terms")) {
    std::vector<int> e;
    try {
      e = t.at("exponent").get<std::vector<int>>();
      out.add_term(e, t.at("alpha").get<int>(), t.at("beta").get<int>(),
                   Complex(t.at("re").get<double>(), t.at("im").get<double>()));
    } catch (const Error&) {
      throw;
    } catch (const std::exception& ex) {
      throw MalformedSpec(std::string("bad family term: ") + ex.what());
    }
  }
  return out;
}

Beltrami Beltrami::load_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw MalformedSpec("cannot open family file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load(ss.str(), n);
}

void Beltrami::add_term(const std::vector<int>& exponent, int alpha, int beta, Complex c) {
  if (alpha < 1 || alpha > n_ || beta < 1 || beta > n_)
    throw MalformedSpec("family term index out of range");
  if (exponent_degree(exponent) == 0)
    throw MalformedSpec("family must satisfy phi(0) = 0; degree-0 term found");
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n_, n_);
  mat(alpha - 1, beta - 1) = c;
  s_.add_term(exponent, mat);
}

Eigen::MatrixXcd Beltrami::eval(const std::vector<Complex>& t) const {
  Eigen::MatrixXcd v = s_.eval(t);
  if (v.size() == 0) v = Eigen::MatrixXcd::Zero(n_, n_);
  return v;
}

exact::Matrix Beltrami::eval_exact(const std::vector<exact::Scalar>& t) const {
  if (int(t.size()) != s_.params()) throw ArityMismatch("evaluation point arity != m");
  exact::Matrix out(n_, n_);
  for (const auto& [e, mat] : s_.terms()) {
    exact::Scalar mono(1);
    for (std::size_t i = 0; i < t.size(); ++i)
      for (int r = 0; r < e[i]; ++r) mono = mono * t[i];
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        Complex c = mat(a, b);
        if (c != Complex(0, 0))
          out.at(a, b) += mono * exact::Scalar::from_double(c.real(), c.imag());
      }
  }
  return out;
}

Eigen::MatrixXcd Beltrami::degree1(int dir) const {
  std::vector<int> e(s_.params(), 0);
  e[dir] = 1;
  Eigen::MatrixXcd v = s_.coeff(e);
  if (v.size() == 0) v = Eigen::MatrixXcd::Zero(n_, n_);
  return v;
}

std::string Beltrami::to_json() const {
  ordered_json j;
  j["name"] = name_;
  j["m"] = s_.params();
  j["N"] = s_.order();
  ordered_json terms = ordered_json::array();
  for (const auto& [e, mat] : s_.terms())
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b) {
        Complex c = mat(a, b);
        if (c == Complex(0, 0)) continue;
        ordered_json t;
        t["exponent"] = e;
        t["alpha"] = a + 1;
        t["beta"] = b + 1;
        t["re"] = c.real();
        t["im"] = c.imag();
        terms.push_back(t);
      }
  j["terms"] = terms;
  return j.dump(2);
}

VectorValuedForm matrix_to_vv(const Model& m, const Eigen::MatrixXcd& phi) {
  const Algebra& A = m.algebra();
  VectorValuedForm out;
  out.comp.resize(A.n());
  for (int a = 0; a < A.n(); ++a) {
    Form f(A);
    for (int b = 0; b < A.n(); ++b)
      if (phi(a, b) != Complex(0, 0)) f = f + Form::monomial(A, 0, index_bit(b + 1), phi(a, b));
    out.comp[a] = f;
  }
  return out;
}

Eigen::MatrixXcd vv_to_matrix(const Model& m, const VectorValuedForm& v) {
  const Algebra& A = m.algebra();
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(A.n(), A.n());
  for (int a = 0; a < A.n(); ++a) {
    if (v.comp[a].is_unset()) continue;
    for (int b = 0; b < A.n(); ++b)
      phi(a, b) = v.comp[a].coeff(A.id_of(0, index_bit(b + 1)));
  }
  return phi;
}

Eigen::VectorXcd vv_coords(const Model& m, int q, const VectorValuedForm& v) {
  const Algebra& A = m.algebra();
  const auto& ids = A.block(0, q);
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(int(ids.size()) * A.n());
  for (int a = 0; a < A.n(); ++a) {
    if (v.comp[a].is_unset()) continue;
    for (int i = 0; i < int(ids.size()); ++i) x[i * A.n() + a] = v.comp[a].coeff(ids[i]);
  }
  return x;
}

VectorValuedForm vv_from_coords(const Model& m, int q, const Eigen::VectorXcd& x) {
  const Algebra& A = m.algebra();
  const auto& ids = A.block(0, q);
  VectorValuedForm out;
  out.comp.assign(A.n(), Form(A));
  for (int a = 0; a < A.n(); ++a)
    for (int i = 0; i < int(ids.size()); ++i)
      out.comp[a].coeffs()[ids[i]] = x[i * A.n() + a];
  return out;
}

Form contract(const Model& m, const Eigen::MatrixXcd& phi, const Form& a) {
  if (a.is_unset()) return {};
  return Form(m.algebra(), m.contraction_matrix(phi) * a.coeffs());
}

FormSeries contract(const Model& m, const Beltrami& phi, const FormSeries& a) {
  return series_apply(
      [&m](const Eigen::MatrixXcd& mat, const Form& f) {
        return Form(m.algebra(), m.contraction_matrix(mat) * f.coeffs());
      },
      phi.series(), a);
}

Eigen::MatrixXcd exp_contraction_matrix(const Model& m, const Eigen::MatrixXcd& phi) {
  int dim = m.algebra().dim();
  Eigen::MatrixXcd C = m.contraction_matrix(phi);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd pw = Eigen::MatrixXcd::Identity(dim, dim);
  // i_phi lowers holomorphic degree, so the sum stops after n steps.
  for (int k = 1; k <= m.n(); ++k) {
    pw = (C * pw) / double(k);
    out += pw;
  }
  return out;
}

Form exp_contract(const Model& m, const Eigen::MatrixXcd& phi, const Form& a) {
  if (a.is_unset()) return {};
  return Form(m.algebra(), exp_contraction_matrix(m, phi) * a.coeffs());
}

FormSeries exp_contract(const Model& m, const Beltrami& phi, const FormSeries& a) {
  FormSeries out = a;
  FormSeries cur = a;
  for (int k = 1; k <= m.n(); ++k) {
    cur = contract(m, phi, cur).scaled(Complex(1.0 / double(k), 0));
    if (cur.empty()) break;
    out = out + cur;
  }
  return out;
}

Eigen::MatrixXcd lie_hol_matrix(const Model& m, const Eigen::MatrixXcd& phi) {
  Eigen::MatrixXcd C = m.contraction_matrix(phi);
  return C * m.del() - m.del() * C;
}

Eigen::MatrixXcd deformed_delbar_matrix(const Model& m, const Eigen::MatrixXcd& phi) {
  return m.delbar() - lie_hol_matrix(m, phi);
}

Eigen::MatrixXcd deformed_d_matrix(const Model& m, const Eigen::MatrixXcd& phi) {
  return m.del() + deformed_delbar_matrix(m, phi);
}

Form deformed_delbar(const Model& m, const Eigen::MatrixXcd& phi, const Form& a) {
  if (a.is_unset()) return {};
  return Form(m.algebra(), deformed_delbar_matrix(m, phi) * a.coeffs());
}

Form deformed_d(const Model& m, const Eigen::MatrixXcd& phi, const Form& a) {
  if (a.is_unset()) return {};
  return Form(m.algebra(), deformed_d_matrix(m, phi) * a.coeffs());
}

exact::Matrix lie_hol_matrix_exact(const Model& m, const exact::Matrix& phi) {
  exact::Matrix C = m.contraction_matrix_exact(phi);
  return C * m.del_exact() - m.del_exact() * C;
}

exact::Matrix deformed_delbar_matrix_exact(const Model& m, const exact::Matrix& phi) {
  return m.delbar_exact() - lie_hol_matrix_exact(m, phi);
}

exact::Matrix deformed_d_matrix_exact(const Model& m, const exact::Matrix& phi) {
  return m.del_exact() + deformed_delbar_matrix_exact(m, phi);
}

std::vector<Form> deformed_coframe(const Model& m, const Eigen::MatrixXcd& phi) {
  const Algebra& A = m.algebra();
  std::vector<Form> eta;
  for (int a = 1; a <= A.n(); ++a) {
    Form f = Form::monomial(A, index_bit(a), 0);
    for (int b = 1; b <= A.n(); ++b)
      if (phi(a - 1, b - 1) != Complex(0, 0))
        f = f + Form::monomial(A, 0, index_bit(b), phi(a - 1, b - 1));
    eta.push_back(f);
  }
  return eta;
}

double frame_smallest_sv(const Eigen::MatrixXcd& phi) {
  int n = int(phi.rows());
  Eigen::MatrixXcd F(2 * n, 2 * n);
  F.topLeftCorner(n, n).setIdentity();
  F.topRightCorner(n, n) = phi;
  F.bottomLeftCorner(n, n) = phi.conjugate();
  F.bottomRightCorner(n, n).setIdentity();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(F);
  return svd.singularValues().minCoeff();
}

double integrability_residual(const Model& m, const Eigen::MatrixXcd& phi) {
  if (frame_smallest_sv(phi) < 1e-8)
    throw FrameDegenerate("deformed coframe is rank deficient; sample outside admissible polydisc");
  std::vector<Form> eta = deformed_coframe(m, phi);
  Form top = eta[0];
  for (int a = 1; a < int(eta.size()); ++a) top = wedge(top, eta[a]);
  double res = 0;
  for (const Form& e : eta) {
    Form de(m.algebra(), m.d() * e.coeffs());
    res = std::max(res, wedge(de, top).norm());
  }
  return res;
}

bool is_integrable(const Model& m, const Eigen::MatrixXcd& phi, double tol) {
  return integrability_residual(m, phi) <= tol;
}

DeformedFrame deformed_bigrading(const Model& m, const Eigen::MatrixXcd& phi, double tol) {
  const Algebra& A = m.algebra();
  if (frame_smallest_sv(phi) < std::max(tol, 1e-8))
    throw FrameDegenerate("deformed coframe is rank deficient");
  std::vector<Form> eta = deformed_coframe(m, phi);
  std::vector<Form> etabar;
  for (const Form& e : eta) etabar.push_back(conjugate(e));

  DeformedFrame fr;
  int dim = A.dim();
  fr.basis = Eigen::MatrixXcd::Zero(dim, dim);
  for (int id = 0; id < dim; ++id) {
    const Monomial& mono = A.monomial(id);
    Form prod = Form::monomial(A, 0, 0);
    for (int i : mask_indices(mono.I)) prod = wedge(prod, eta[i - 1]);
    for (int j : mask_indices(mono.J)) prod = wedge(prod, etabar[j - 1]);
    fr.basis.col(id) = prod.coeffs();
  }
  fr.basis_inv = fr.basis.partialPivLu().inverse();
  fr.d_eta = fr.basis_inv * m.d() * fr.basis;

  fr.del_t = Eigen::MatrixXcd::Zero(dim, dim);
  fr.delbar_t = Eigen::MatrixXcd::Zero(dim, dim);
  for (int col = 0; col < dim; ++col) {
    Bidegree bc = A.bidegree(col);
    for (int row = 0; row < dim; ++row) {
      Complex c = fr.d_eta(row, col);
      if (c == Complex(0, 0)) continue;
      Bidegree br = A.bidegree(row);
      if (br.p == bc.p + 1 && br.q == bc.q)
        fr.del_t(row, col) = c;
      else if (br.p == bc.p && br.q == bc.q + 1)
        fr.delbar_t(row, col) = c;
    }
  }
  return fr;
}

VectorValuedForm ks_class(const MetricContext& mc, const Beltrami& phi, int dir) {
  const Model& m = mc.model();
  Eigen::MatrixXcd p1 = phi.degree1(dir);
  VectorValuedForm vv = matrix_to_vv(m, p1);
  Eigen::VectorXcd x = vv_coords(m, 1, vv);
  double scale = std::max(1.0, x.norm());
  Eigen::VectorXcd dbar = mc.vv_delbar(1) * x;
  if (dbar.norm() > 1e-8 * scale)
    throw NotClosed("degree-one family coefficient is not delbar-closed (residual " +
                    std::to_string(dbar.norm()) + ")");
  return vv_from_coords(m, 1, mc.vv_hproj(1) * x);
}

}  // namespace hodgevar
