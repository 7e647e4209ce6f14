#include "hodgevar/period.hpp"

namespace hodgevar {

namespace {

std::string point_str(const std::vector<Complex>& t) {
  std::string s;
  for (Complex c : t) s += "(" + std::to_string(c.real()) + "," + std::to_string(c.imag()) + ")";
  return s;
}

// Blocks (r, k-r) with r descending from min(n,k) to max(p, k-n).
std::vector<Bidegree> filtration_blocks(int n, int p, int k) {
  std::vector<Bidegree> out;
  for (int r = std::min(n, k); r >= std::max(p, k - n); --r) out.push_back({r, k - r});
  return out;
}

}  // namespace

Eigen::VectorXcd class_coords(const MetricContext& mc, int k, const Form& f) {
  if (f.is_unset()) return Eigen::VectorXcd::Zero(mc.harmonic_basis_d(k).cols());
  return mc.harmonic_basis_d(k).adjoint() * f.coeffs();
}

HodgeDecomposition hodge_decomposition(const MetricContext& mc, int k) {
  HodgeDecomposition hd;
  hd.k = k;
  const Algebra& A = mc.algebra();
  const Eigen::MatrixXcd& Hk = mc.harmonic_basis_d(k);
  hd.M = Eigen::MatrixXcd(Hk.cols(), 0);
  for (Bidegree bd : filtration_blocks(A.n(), 0, k)) {
    const Eigen::MatrixXcd& reps = mc.harmonic_basis_bc(bd.p, bd.q);
    hd.blocks.push_back({bd.p, bd.q, int(hd.M.cols()), int(reps.cols())});
    hd.M = hcat(hd.M, Hk.adjoint() * reps);
  }
  hd.Minv = pinv(hd.M, mc.config().tol);
  return hd;
}

IotaResult iota_map(const MetricContext& mc, const VectorValuedForm& phi1, const Form& x) {
  const Model& m = mc.model();
  auto pt = x.pure_type();
  if (!pt) throw NotHarmonic("iota input must be of pure type");
  double scale = std::max(1.0, x.norm());
  if ((x.coeffs() - mc.hproj_bc_global() * x.coeffs()).norm() > 1e-8 * scale)
    throw NotHarmonic("iota input is not Bott-Chern harmonic");
  Eigen::VectorXcd pv = vv_coords(m, 1, phi1);
  if ((pv - mc.vv_hproj(1) * pv).norm() > 1e-8 * std::max(1.0, pv.norm()))
    throw NotHarmonic("iota direction is not delbar-harmonic");

  int r = pt->p, s = pt->q;
  Eigen::MatrixXcd phim = vv_to_matrix(m, phi1);
  Form ix = contract(m, phim, x);
  Eigen::VectorXcd w = m.del() * ix.coeffs();
  Eigen::VectorXcd u = mc.ddbar_star() * (mc.green_bc_global() * w);
  Eigen::VectorXcd delu = m.del() * u;

  IotaResult out;
  out.f1 = Form(m.algebra(), ix.coeffs() - m.delbar() * u);
  out.f2 = Form(m.algebra(), -(mc.hproj_bc_global() * delu));
  if (r >= 1 && s + 1 <= m.n())
    out.c1 = mc.harmonic_basis_bc(r - 1, s + 1).adjoint() * out.f1.coeffs();
  else
    out.c1 = Eigen::VectorXcd(0);
  out.c2 = -(mc.harmonic_basis_bc(r, s).adjoint() * delu);
  return out;
}

PpbarDecomposition ppbar_decompose(const MetricContext& mc, const Form& sigma, int p,
                                   bool allow_non_ddbar, const DdbarReport* ddbar) {
  const Model& m = mc.model();
  const Algebra& A = m.algebra();
  DdbarReport local;
  if (!ddbar) {
    local = ddbar_check(mc);
    ddbar = &local;
  }
  if (!ddbar->overall && !allow_non_ddbar)
    throw DdbarRequired("model " + m.name() + " fails the del-delbar lemma");

  PpbarDecomposition out;
  if (sigma.is_unset() || sigma.norm() == 0) {
    out.x = Form(A);
    return out;
  }
  double scale = std::max(1.0, sigma.norm());
  if ((m.d() * sigma.coeffs()).norm() > 1e-10 * scale)
    throw NotClosed("ppbar input has d-residual " +
                    std::to_string((m.d() * sigma.coeffs()).norm()));
  int k = -1;
  for (auto [a, b] : sigma.bidegrees()) {
    if (k >= 0 && k != a + b) throw NotInFiltration("input is not of pure total degree");
    k = a + b;
    if (a < p) throw NotInFiltration("support in bidegree below the filtration level");
  }

  HodgeDecomposition hd = hodge_decomposition(mc, k);
  Eigen::VectorXcd v = class_coords(mc, k, sigma);
  Eigen::VectorXcd c = hd.Minv * v;

  Form hsum(A);
  for (const auto& blk : hd.blocks) {
    Eigen::VectorXcd cb = c.segment(blk.offset, blk.size);
    if (blk.a < p) {
      if (cb.norm() > 1e-8 * scale)
        throw NotInFiltration("class has a component below the filtration level");
      continue;
    }
    Form beta(A, mc.harmonic_basis_bc(blk.a, blk.b) * cb);
    out.betas.push_back({Bidegree{blk.a, blk.b}, beta});
    hsum = hsum + beta;
  }

  // Solve d x0 = sigma - sum beta (minimal norm solution).
  const auto& rows = A.degree(k);
  const auto& cols = A.degree(k - 1);
  Eigen::MatrixXcd Dk = take_block(m.d(), rows, cols);
  Eigen::VectorXcd rhs = take_entries(Eigen::VectorXcd(sigma.coeffs() - hsum.coeffs()), rows);
  Eigen::VectorXcd x0loc = pinv(Dk, mc.config().tol) * rhs;
  Form x0(A, scatter(x0loc, cols, A.dim()));

  // Keep the parts with holomorphic degree >= p; absorb the boundary part
  // del x0^{p-1,k-p} through a del-delbar solve.
  Form T(A);
  for (Bidegree bd : filtration_blocks(A.n(), 0, k - 1))
    if (bd.p >= p) T = T + x0.projected(bd.p, bd.q);
  out.x = T;
  if (p >= 1 && p - 1 <= A.n() && k - p >= 0 && k - p <= A.n()) {
    Form low = x0.projected(p - 1, k - p);
    Eigen::VectorXcd w = m.del() * low.coeffs();
    if (w.norm() > 1e-13 * scale && p - 1 <= A.n() && k - p - 1 >= 0) {
      const auto& yrows = A.block(p, k - p);
      const auto& ycols = A.block(p - 1, k - p - 1);
      Eigen::MatrixXcd DD = take_block(mc.ddbar(), yrows, ycols);
      Eigen::VectorXcd yloc = pinv(DD, mc.config().tol) * take_entries(w, yrows);
      Form y(A, scatter(yloc, ycols, A.dim()));
      out.x = out.x + Form(A, m.delbar() * y.coeffs());
    }
  }

  out.residual = (sigma.coeffs() - m.d() * out.x.coeffs() - hsum.coeffs()).norm();
  return out;
}

PeriodEngine::PeriodEngine(const MetricContext& mc, const Beltrami& phi) : mc_(mc), phi_(phi) {}

const std::vector<CanonicalDeformation>& PeriodEngine::block_deformations(int r, int s) {
  auto key = std::make_pair(r, s);
  auto it = defs_.find(key);
  if (it != defs_.end()) return it->second;
  std::vector<CanonicalDeformation> list;
  const Eigen::MatrixXcd& reps = mc_.harmonic_basis_bc(r, s);
  for (int l = 0; l < reps.cols(); ++l)
    list.push_back(canonical_deformation(mc_, Form(mc_.algebra(), reps.col(l)), phi_,
                                         mc_.config().order));
  return defs_.emplace(key, std::move(list)).first->second;
}

const std::vector<FormSeries>& PeriodEngine::block_exp_series(int r, int s) {
  auto key = std::make_pair(r, s);
  auto it = exps_.find(key);
  if (it != exps_.end()) return it->second;
  std::vector<FormSeries> list;
  for (const CanonicalDeformation& cd : block_deformations(r, s))
    list.push_back(exp_contract(mc_.model(), phi_, cd.series));
  return exps_.emplace(key, std::move(list)).first->second;
}

HodgeDecomposition& PeriodEngine::hodge(int k) {
  auto it = hodge_.find(k);
  if (it != hodge_.end()) return it->second;
  return hodge_.emplace(k, hodge_decomposition(mc_, k)).first->second;
}

PeriodPoint PeriodEngine::period_point(int p, int k, const std::vector<Complex>& t,
                                       bool allow_rank_drop) {
  const Model& m = mc_.model();
  Eigen::MatrixXcd pt = phi_.eval(t);
  if (!is_integrable(m, pt, mc_.config().tol)) throw NotIntegrableAt(point_str(t));
  Eigen::MatrixXcd E = exp_contraction_matrix(m, pt);
  const Eigen::MatrixXcd& Hk = mc_.harmonic_basis_d(k);

  PeriodPoint out;
  out.p = p;
  out.k = k;
  out.t = t;
  Eigen::MatrixXcd cols(Hk.cols(), 0);
  for (Bidegree bd : filtration_blocks(m.n(), p, k)) {
    const auto& defs = block_deformations(bd.p, bd.q);
    out.expected_dim += int(defs.size());
    for (int l = 0; l < int(defs.size()); ++l) {
      Form st = defs[l].series.eval(t);
      Eigen::VectorXcd v = E * st.coeffs();
      out.closure_residual = std::max(out.closure_residual, (m.d() * v).norm());
      Eigen::MatrixXcd col = Hk.adjoint() * v;
      cols = hcat(cols, col);
      out.labels.push_back("sigma(" + std::to_string(bd.p) + "," + std::to_string(bd.q) + ")#" +
                           std::to_string(l + 1));
    }
  }
  out.chart = make_chart(cols, mc_.config().tol, mc_.config().pluecker_cap);
  if (out.chart.dim() < int(cols.cols()) && !allow_rank_drop)
    throw RankDrop("period chart rank " + std::to_string(out.chart.dim()) + " < " +
                   std::to_string(cols.cols()) + " at t = " + point_str(t));
  return out;
}

SubspaceChart PeriodEngine::fph_direct(int p, int k, const std::vector<Complex>& t) {
  const Model& m = mc_.model();
  const Algebra& A = m.algebra();
  Eigen::MatrixXcd pt = phi_.eval(t);
  if (!is_integrable(m, pt, mc_.config().tol)) throw NotIntegrableAt(point_str(t));
  DeformedFrame fr = deformed_bigrading(m, pt, mc_.config().tol);

  // Bott-Chern Laplacian of the deformed structure, in eta coordinates with
  // the deformed coframe declared orthonormal.
  Eigen::MatrixXcd ddbar_t = fr.del_t * fr.delbar_t;
  Eigen::MatrixXcd T = fr.delbar_t.adjoint() * fr.del_t;
  Eigen::MatrixXcd lap = ddbar_t * ddbar_t.adjoint() + ddbar_t.adjoint() * ddbar_t +
                         T * T.adjoint() + T.adjoint() * T +
                         fr.delbar_t.adjoint() * fr.delbar_t + fr.del_t.adjoint() * fr.del_t;

  const Eigen::MatrixXcd& Hk = mc_.harmonic_basis_d(k);
  Eigen::MatrixXcd cols(Hk.cols(), 0);
  for (Bidegree bd : filtration_blocks(A.n(), p, k)) {
    const auto& blk = A.block(bd.p, bd.q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(take_block(lap, blk, blk));
    const Eigen::VectorXd& ev = es.eigenvalues();
    double cut = mc_.config().tol * std::max(ev.size() > 0 ? ev[ev.size() - 1] : 0.0, 1.0);
    for (int i = 0; i < ev.size(); ++i) {
      if (ev[i] > cut) break;
      Eigen::VectorXcd local = es.eigenvectors().col(i);
      Eigen::VectorXcd full = scatter(local, blk, A.dim());
      cols = hcat(cols, Eigen::MatrixXcd(Hk.adjoint() * (fr.basis * full)));
    }
  }
  return make_chart(cols, mc_.config().tol, mc_.config().pluecker_cap);
}

double PeriodEngine::transversality_residual(int p, int k, int dir) {
  if (p < 1) return 0.0;
  SubspaceChart F = hodge_filtration(mc_, p - 1, k, true);
  Eigen::MatrixXcd P = projector(F.rcef, mc_.config().tol);
  std::vector<Complex> zero(phi_.params(), Complex(0, 0));
  double res = 0.0;
  for (Bidegree bd : filtration_blocks(mc_.algebra().n(), p, k)) {
    for (const FormSeries& es : block_exp_series(bd.p, bd.q)) {
      Form deriv = series_partial(es, dir).eval(zero);
      Eigen::VectorXcd v = class_coords(mc_, k, deriv);
      res = std::max(res, (v - P * v).norm());
    }
  }
  return res;
}

Eigen::VectorXcd PeriodEngine::raw_pluecker(int p, int k, const std::vector<Complex>& t) {
  PeriodPoint pp = period_point(p, k, t);
  Eigen::VectorXcd v = pluecker_vector(pp.chart.span, mc_.config().pluecker_cap);
  if (v.size() == 0)
    throw Error("Pluecker vector exceeds the configured coordinate cap");
  return v;
}

double PeriodEngine::holomorphy_residual(int p, int k, const std::vector<Complex>& t0, int dir) {
  double h = mc_.config().fd_step;
  Eigen::VectorXcd base = raw_pluecker(p, k, t0);
  int pivot = 0;
  base.cwiseAbs().maxCoeff(&pivot);

  auto affine = [&](Complex offset) {
    std::vector<Complex> t = t0;
    t[dir] += offset;
    Eigen::VectorXcd v = raw_pluecker(p, k, t);
    return Eigen::VectorXcd(v / v[pivot]);
  };
  Eigen::VectorXcd dx = (affine(Complex(h, 0)) - affine(Complex(-h, 0))) / (2 * h);
  Eigen::VectorXcd dy = (affine(Complex(0, h)) - affine(Complex(0, -h))) / (2 * h);
  return 0.5 * (dx + Complex(0, 1) * dy).norm();
}

double PeriodEngine::diagram_residual(int p, int k, int dir) {
  VectorValuedForm ks = ks_class(mc_, phi_, dir);
  HodgeDecomposition& hd = hodge(k);
  std::vector<Complex> zero(phi_.params(), Complex(0, 0));
  double res = 0.0;
  for (Bidegree bd : filtration_blocks(mc_.algebra().n(), p, k)) {
    const auto& defs = block_deformations(bd.p, bd.q);
    const auto& exps = block_exp_series(bd.p, bd.q);
    for (int l = 0; l < int(defs.size()); ++l) {
      Form deriv = series_partial(exps[l], dir).eval(zero);
      Eigen::VectorXcd v = class_coords(mc_, k, deriv);
      Eigen::VectorXcd c = hd.Minv * v;
      res = std::max(res, (hd.M * c - v).norm());

      IotaResult iota = iota_map(mc_, ks, defs[l].sigma0);
      Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(c.size());
      if (const auto* b1 = hd.find(bd.p - 1, bd.q + 1))
        expected.segment(b1->offset, b1->size) = iota.c1;
      if (const auto* b2 = hd.find(bd.p, bd.q)) expected.segment(b2->offset, b2->size) = iota.c2;
      res = std::max(res, (c - expected).norm());
    }
  }
  return res;
}

}  // namespace hodgevar
