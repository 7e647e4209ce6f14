#include <doctest.h>

#include "test_util.hpp"

using namespace hodgevar;

TEST_CASE("reduced column echelon form is canonical") {
  Eigen::MatrixXcd A(4, 2);
  A << Complex(1, 0), Complex(0, 1), Complex(2, 1), Complex(1, 0), Complex(0, 0), Complex(3, -1),
      Complex(1, 1), Complex(0.5, 0);
  // Recombine the columns: same subspace, different spanning set.
  Eigen::MatrixXcd mix(2, 2);
  mix << Complex(2, 1), Complex(-1, 3), Complex(0.5, -2), Complex(1, 1);
  Eigen::MatrixXcd B = A * mix;
  Eigen::MatrixXcd ra = reduced_column_echelon(A, 1e-9);
  Eigen::MatrixXcd rb = reduced_column_echelon(B, 1e-9);
  CHECK((ra - rb).norm() < 1e-12);
  CHECK(ra.cols() == 2);
  // A dependent column is dropped.
  Eigen::MatrixXcd C(4, 3);
  C << A, A.col(0) + A.col(1);
  CHECK(reduced_column_echelon(C, 1e-9).cols() == 2);
}

TEST_CASE("pluecker coordinates") {
  SUBCASE("line in C^2") {
    Eigen::MatrixXcd M(2, 1);
    M << Complex(1, 0), Complex(0.1, 0);
    Eigen::VectorXcd v = pluecker_vector(M, 1000);
    CHECK(v.size() == 2);
    CHECK(std::abs(v[0] - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(v[1] - Complex(0.1, 0)) < 1e-15);
  }
  SUBCASE("plane in C^3") {
    Eigen::MatrixXcd M(3, 2);
    M << 1, 0, 0, 1, 2, 3;
    Eigen::VectorXcd v = pluecker_vector(M, 1000);
    // row subsets (1,2), (1,3), (2,3)
    CHECK(std::abs(v[0] - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(v[1] - Complex(3, 0)) < 1e-15);
    CHECK(std::abs(v[2] - Complex(-2, 0)) < 1e-15);
  }
  SUBCASE("normalization: unit norm, pivot positive real") {
    Eigen::VectorXcd v(3);
    v << Complex(0, 2), Complex(1, 1), Complex(0, 0);
    Eigen::VectorXcd nv = normalize_pluecker(v, 1e-9);
    CHECK(std::abs(nv.norm() - 1.0) < 1e-14);
    CHECK(nv[0].imag() == doctest::Approx(0.0));
    CHECK(nv[0].real() > 0);
  }
  SUBCASE("cap yields empty vector") {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Random(20, 10);
    CHECK(pluecker_vector(M, 100).size() == 0);
  }
  SUBCASE("scale invariance of the normalized vector") {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Random(5, 2);
    SubspaceChart a = make_chart(M, 1e-9);
    SubspaceChart b = make_chart(M * Complex(0.3, -1.2), 1e-9);
    CHECK((a.pluecker - b.pluecker).norm() < 1e-12);
  }
}

TEST_CASE("principal angles") {
  Eigen::MatrixXcd A(3, 1), B(3, 1), C(3, 2);
  A << 1, 0, 0;
  B << 0, 1, 0;
  C << 1, 0, 0, 1, 0, 0;
  CHECK(max_principal_angle(A, B, 1e-9) == doctest::Approx(M_PI / 2));
  CHECK(max_principal_angle(A, A, 1e-9) < 1e-9);
  CHECK(containment_residual(A, C, 1e-9) < 1e-14);
  CHECK(containment_residual(C, A, 1e-9) > 0.5);
}
