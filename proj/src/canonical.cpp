#include "hodgevar/canonical.hpp"

#include <map>

namespace hodgevar {

CanonicalDeformation canonical_deformation(const MetricContext& mc, const Form& sigma0,
                                           const Beltrami& phi, int order) {
  const Model& m = mc.model();
  double scale = std::max(1.0, sigma0.norm());
  Eigen::VectorXcd h_res = sigma0.coeffs() - mc.hproj_bc_global() * sigma0.coeffs();
  if (h_res.norm() > 1e-10 * scale)
    throw NotHarmonic("sigma0 is not Bott-Chern harmonic (residual " +
                      std::to_string(h_res.norm()) + ")");
  auto pt = sigma0.pure_type();
  if (!pt) throw NotHarmonic("sigma0 must be of pure type");

  CanonicalDeformation cd;
  cd.pq = *pt;
  cd.sigma0 = sigma0;
  int mpar = phi.params();
  cd.series = FormSeries::constant(mpar, order, sigma0);

  // Contraction matrices of the homogeneous family coefficients.
  std::vector<std::pair<std::vector<int>, Eigen::MatrixXcd>> phi_ops;
  for (const auto& [e, mat] : phi.series().terms())
    phi_ops.push_back({e, m.contraction_matrix(mat)});

  const Eigen::MatrixXcd& R = mc.recursion_op();
  cd.degree_norms.assign(order + 1, 0.0);
  cd.degree_norms[0] = sigma0.norm();

  for (int k = 1; k <= order; ++k) {
    // U_e = sum del i_{phi_{e1}} sigma_{e2} over e1 + e2 = e, |e| = k.
    std::map<std::vector<int>, Eigen::VectorXcd> U;
    for (const auto& [e1, op] : phi_ops) {
      int d1 = exponent_degree(e1);
      if (d1 > k) continue;
      for (const auto& [e2, f] : cd.series.terms()) {
        if (exponent_degree(e2) != k - d1) continue;
        std::vector<int> e(e1.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
        Eigen::VectorXcd v = m.del() * (op * f.coeffs());
        auto it = U.find(e);
        if (it == U.end())
          U.emplace(e, std::move(v));
        else
          it->second += v;
      }
    }
    for (const auto& [e, v] : U) {
      Eigen::VectorXcd s = R * v;
      if (s.norm() == 0) continue;
      cd.series.add_term(e, Form(m.algebra(), s));
      cd.degree_norms[k] = std::max(cd.degree_norms[k], s.norm());
    }
  }
  return cd;
}

double fixed_point_residual(const MetricContext& mc, const CanonicalDeformation& cd,
                            const Beltrami& phi) {
  const Model& m = mc.model();
  FormSeries t = contract(m, phi, cd.series);
  FormSeries rhs = series_apply(
      [&](const Form& f) { return Form(m.algebra(), mc.recursion_op() * (m.del() * f.coeffs())); },
      t);
  // Fixed point: sigma = sigma0 + R(del i_phi sigma) with R carrying the minus.
  FormSeries res = cd.series - rhs;
  res.add_term(std::vector<int>(phi.params(), 0), -cd.sigma0);
  return res.max_norm();
}

double closedness_residual(const MetricContext& mc, const CanonicalDeformation& cd,
                           const Beltrami& phi, const std::vector<Complex>& t) {
  const Model& m = mc.model();
  Eigen::MatrixXcd pt = phi.eval(t);
  if (!is_integrable(m, pt, mc.config().tol)) {
    std::string ts;
    for (Complex c : t) ts += "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
    throw NotIntegrableAt(ts);
  }
  Form st = cd.series.eval(t);
  if (st.is_unset()) return 0.0;
  return (deformed_d_matrix(m, pt) * st.coeffs()).norm();
}

FtildeResult ftilde_eval(const MetricContext& mc, const std::vector<Form>& sigma0s,
                         const Beltrami& phi, const std::vector<Complex>& t, int order) {
  FtildeResult out;
  out.columns = Eigen::MatrixXcd::Zero(mc.algebra().dim(), int(sigma0s.size()));
  for (int l = 0; l < int(sigma0s.size()); ++l) {
    CanonicalDeformation cd = canonical_deformation(mc, sigma0s[l], phi, order);
    Form st = cd.series.eval(t);
    out.columns.col(l) = st.coeffs();
    out.ddbar_star_residual.push_back((mc.ddbar_star() * st.coeffs()).norm());
  }
  out.rank = mc.rank(out.columns);
  return out;
}

double recursion_image_residual(const MetricContext& mc, const CanonicalDeformation& cd) {
  Eigen::MatrixXcd P = projector(mc.recursion_op(), mc.config().tol);
  double res = 0.0;
  for (const auto& [e, f] : cd.series.terms()) {
    if (exponent_degree(e) == 0) continue;
    res = std::max(res, (f.coeffs() - P * f.coeffs()).norm());
  }
  return res;
}

}  // namespace hodgevar
