#include <doctest.h>

#include "hodgevar/canonical.hpp"
#include "test_util.hpp"

using namespace hodgevar;
using testutil::data_path;

namespace {
Beltrami iwasawa_e2() { return Beltrami::load_file(data_path("families/iwasawa_e2.json"), 3); }

Form iwasawa_sigma0() {
  // w2 ^ w3 ^ w~2, Bott-Chern harmonic of type (2,1) on the Iwasawa model
  const Algebra& A = testutil::iwasawa().model.algebra();
  return Form::monomial(A, index_bit(2) | index_bit(3), index_bit(2));
}
}  // namespace

TEST_CASE("canonical deformation construction") {
  SUBCASE("flat torus: corrections vanish") {
    const auto& fix = testutil::torus1();
    Beltrami phi = Beltrami::load_file(data_path("families/torus1_std.json"), 1);
    Form dz = Form::monomial(fix.model.algebra(), index_bit(1), 0);
    CanonicalDeformation cd = canonical_deformation(fix.metric, dz, phi, 6);
    CHECK(cd.series.terms().size() == 1);
    CHECK((cd.series.eval({Complex(0.1, 0)}) - dz).norm() == 0.0);
  }
  SUBCASE("zero family keeps sigma0") {
    const auto& fix = testutil::iwasawa();
    Beltrami none(3, 1, 6);  // no terms: phi = 0
    CanonicalDeformation cd = canonical_deformation(fix.metric, iwasawa_sigma0(), none, 6);
    CHECK(cd.series.terms().size() == 1);
    CHECK(fixed_point_residual(fix.metric, cd, none) == 0.0);
  }
  SUBCASE("non-harmonic input rejected") {
    const auto& fix = testutil::iwasawa();
    Form w3 = Form::monomial(fix.model.algebra(), index_bit(3), 0);
    CHECK_THROWS_AS(canonical_deformation(fix.metric, w3, iwasawa_e2(), 6), NotHarmonic);
  }
  SUBCASE("iwasawa (2,1) fixture: sigma_1 = t w1^w2^w~3, series terminates") {
    const auto& fix = testutil::iwasawa();
    const Algebra& A = fix.model.algebra();
    CanonicalDeformation cd = canonical_deformation(fix.metric, iwasawa_sigma0(), iwasawa_e2(), 6);
    Form sigma1 = cd.series.coeff({1});
    Form expect = Form::monomial(A, index_bit(1) | index_bit(2), index_bit(3));
    CHECK((sigma1 - expect).norm() < 1e-13);
    for (int k = 2; k <= 6; ++k) CHECK(cd.series.coeff(std::vector<int>{k}).norm() < 1e-14);
    CHECK(cd.degree_norms[1] == doctest::Approx(1.0));
  }
  SUBCASE("iwasawa fixture against the exact-arithmetic oracle") {
    const Model& m = testutil::iwasawa().model;
    const Algebra& A = m.algebra();
    const ExactOps& ex = testutil::iwasawa_exact();
    // sigma_1 = -G_BC (delbar* del del* + delbar*) del i_{phi_1} sigma0,
    // assembled from exact matrices with the exact Hermitian pseudo-inverse.
    exact::Matrix phi1(3, 3);
    phi1.at(1, 0) = exact::Scalar(1);
    exact::Matrix sigma0(A.dim(), 1);
    sigma0.at(A.id_of(index_bit(2) | index_bit(3), index_bit(2)), 0) = exact::Scalar(1);
    exact::Matrix del_star = m.del_exact().adjoint();
    exact::Matrix delbar_star = m.delbar_exact().adjoint();
    exact::Matrix w = m.del_exact() * (m.contraction_matrix_exact(phi1) * sigma0);
    exact::Matrix v = delbar_star * (m.del_exact() * (del_star * w)) + delbar_star * w;
    const auto& blk = A.block(2, 1);
    exact::Matrix green = ex.lap_bc.block(blk, blk).pinv_hermitian();
    exact::Matrix s1_local = green * v.select_rows(blk);
    // expected: -sigma_1 has coefficient -1 at w1^w2^w~3
    exact::Matrix expect(int(blk.size()), 1);
    for (int i = 0; i < int(blk.size()); ++i)
      if (blk[i] == A.id_of(index_bit(1) | index_bit(2), index_bit(3)))
        expect.at(i, 0) = exact::Scalar(-1);
    CHECK((s1_local - expect).is_zero());
  }
}

TEST_CASE("fixed point residual") {
  const auto& fix = testutil::iwasawa();
  Beltrami phi = iwasawa_e2();
  CanonicalDeformation cd = canonical_deformation(fix.metric, iwasawa_sigma0(), phi, 6);
  CHECK(fixed_point_residual(fix.metric, cd, phi) < 1e-10);

  SUBCASE("detector catches a perturbed series") {
    CanonicalDeformation bad = cd;
    Form bump = Form::monomial(fix.model.algebra(), index_bit(1) | index_bit(3), index_bit(1),
                               Complex(1e-3, 0));
    bad.series.add_term({2}, bump);
    CHECK(fixed_point_residual(fix.metric, bad, phi) >= 1e-4);
  }
  SUBCASE("corrections lie in the image of the recursion operator") {
    CHECK(recursion_image_residual(fix.metric, cd) < 1e-12);
  }
  SUBCASE("whole harmonic basis, every block") {
    const Algebra& A = fix.model.algebra();
    for (int p = 0; p <= 3; ++p)
      for (int q = 0; q <= 3; ++q) {
        const Eigen::MatrixXcd& H = fix.metric.harmonic_basis_bc(p, q);
        for (int l = 0; l < H.cols(); ++l) {
          CanonicalDeformation c =
              canonical_deformation(fix.metric, Form(A, H.col(l)), phi, 6);
          CHECK(fixed_point_residual(fix.metric, c, phi) < 1e-10);
        }
      }
  }
}

TEST_CASE("closedness residual") {
  SUBCASE("torus: exactly closed") {
    const auto& fix = testutil::torus1();
    Beltrami phi = Beltrami::load_file(data_path("families/torus1_std.json"), 1);
    Form dz = Form::monomial(fix.model.algebra(), index_bit(1), 0);
    CanonicalDeformation cd = canonical_deformation(fix.metric, dz, phi, 6);
    for (Complex t : default_grid())
      CHECK(closedness_residual(fix.metric, cd, phi, {t}) < 1e-12);
  }
  SUBCASE("iwasawa (2,1) fixture is d_phi-closed") {
    const auto& fix = testutil::iwasawa();
    Beltrami phi = iwasawa_e2();
    CanonicalDeformation cd = canonical_deformation(fix.metric, iwasawa_sigma0(), phi, 6);
    CHECK(closedness_residual(fix.metric, cd, phi, {Complex(0.1, 0)}) < 1e-12);
  }
  SUBCASE("iwasawa jumping block (2,2) has a non-closed deformation") {
    const auto& fix = testutil::iwasawa();
    Beltrami phi = iwasawa_e2();
    const Eigen::MatrixXcd& H = fix.metric.harmonic_basis_bc(2, 2);
    double worst = 0;
    for (int l = 0; l < H.cols(); ++l) {
      CanonicalDeformation cd =
          canonical_deformation(fix.metric, Form(fix.model.algebra(), H.col(l)), phi, 6);
      worst = std::max(worst, closedness_residual(fix.metric, cd, phi, {Complex(0.05, 0)}));
    }
    CHECK(worst > 1e-4);  // consistent with v^{2,2} = 1 at this sample
  }
  SUBCASE("non-integrable sample rejected") {
    const auto& fix = testutil::iwasawa();
    Beltrami phi3 = Beltrami::load_file(data_path("families/iwasawa_e3.json"), 3);
    Beltrami phi = iwasawa_e2();
    CanonicalDeformation cd = canonical_deformation(fix.metric, iwasawa_sigma0(), phi, 6);
    CHECK_THROWS_AS(closedness_residual(fix.metric, cd, phi3, {Complex(0.1, 0)}),
                    NotIntegrableAt);
  }
}

TEST_CASE("ftilde evaluation") {
  const auto& fix = testutil::torus2();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  Beltrami phi(2, 1, 6);
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) phi.add_term({1}, a, b, Complex(u(rng), u(rng)) * 0.4);

  const Eigen::MatrixXcd& H = fix.metric.harmonic_basis_bc(1, 1);
  std::vector<Form> basis;
  for (int l = 0; l < H.cols(); ++l) basis.push_back(Form(fix.model.algebra(), H.col(l)));

  SUBCASE("t = 0: columns are the inputs, full rank") {
    FtildeResult r = ftilde_eval(fix.metric, basis, phi, {Complex(0, 0)}, 6);
    CHECK(r.rank == int(basis.size()));
    for (int l = 0; l < int(basis.size()); ++l)
      CHECK((r.columns.col(l) - basis[l].coeffs()).norm() < 1e-14);
  }
  SUBCASE("full rank and ddbar* membership on the grid") {
    for (Complex t : default_grid()) {
      FtildeResult r = ftilde_eval(fix.metric, basis, phi, {t}, 6);
      CHECK(r.rank == int(basis.size()));
      for (double res : r.ddbar_star_residual) CHECK(res < 1e-8);
    }
  }
}

TEST_CASE("injectivity of the deformed classes") {
  // For each harmonic sigma0, the projection of sigma(t) onto the
  // orthocomplement of Im ddbar_phi stays close to ||sigma0||.
  for (const auto* fixp : {&testutil::torus1(), &testutil::torus2()}) {
    const auto& fix = *fixp;
    int n = fix.model.n();
    Beltrami phi(n, 1, 6);
    phi.add_term({1}, 1, 1, Complex(0.5, 0.2));
    if (n == 2) phi.add_term({1}, 2, 1, Complex(-0.3, 0.1));
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        const Eigen::MatrixXcd& H = fix.metric.harmonic_basis_bc(p, q);
        for (int l = 0; l < H.cols(); ++l) {
          CanonicalDeformation cd =
              canonical_deformation(fix.metric, Form(fix.model.algebra(), H.col(l)), phi, 6);
          for (Complex t : default_grid()) {
            Eigen::VectorXcd st = cd.series.eval({t}).coeffs();
            double ortho = st.norm();
            if (p >= 1 && q >= 1) {
              Eigen::MatrixXcd pt = phi.eval({t});
              Eigen::MatrixXcd ddbar_phi =
                  fix.model.del() * deformed_delbar_matrix(fix.model, pt);
              Eigen::MatrixXcd P = projector(
                  take_cols(ddbar_phi, fix.model.algebra().block(p - 1, q - 1)),
                  fix.metric.config().tol);
              ortho = (st - P * st).norm();
            }
            if (t == Complex(0, 0)) CHECK(ortho >= (1 - 1e-6) * 1.0);
            CHECK(ortho >= 0.5);
          }
        }
      }
  }
}
