#include <doctest.h>

#include "test_util.hpp"

using namespace hodgevar;
using testutil::data_path;

TEST_CASE("monomial basis layout") {
  Algebra alg(2);
  CHECK(alg.dim() == 16);
  CHECK(alg.block(1, 1).size() == 4);
  CHECK(alg.block(2, 0).size() == 1);
  // block dimension C(n,p) C(n,q)
  Algebra a3(3);
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q)
      CHECK(int(a3.block(p, q).size()) == int(binomial(3, p) * binomial(3, q)));
  // F^p A^k is a prefix of the degree range
  auto deg2 = a3.degree(2);
  auto f1 = a3.filtration(1, 2);
  for (std::size_t i = 0; i < f1.size(); ++i) CHECK(f1[i] == deg2[i]);
}

TEST_CASE("model loading") {
  SUBCASE("torus has zero differential") {
    const Model& m = testutil::torus1().model;
    CHECK(m.d().norm() == 0.0);
  }
  SUBCASE("iwasawa structure equation echoes back") {
    const Model& m = testutil::iwasawa().model;
    const Algebra& A = m.algebra();
    Form w3 = Form::monomial(A, index_bit(3), 0);
    Form dw3 = differential(m, Diff::d, w3);
    Form expect = Form::monomial(A, index_bit(1) | index_bit(2), 0, Complex(-1, 0));
    CHECK((dw3 - expect).norm() < 1e-14);
  }
  SUBCASE("missing fields rejected") {
    CHECK_THROWS_AS(Model::load("{\"n\": 2}"), MalformedSpec);
    CHECK_THROWS_AS(Model::load("not json"), MalformedSpec);
  }
  SUBCASE("bad indices rejected") {
    CHECK_THROWS_AS(
        Model::load(R"({"n":2,"d_omega":[[{"re":1,"im":0,"kind":"hol","i":2,"j":1}],[]]})"),
        MalformedSpec);
    CHECK_THROWS_AS(
        Model::load(R"({"n":2,"d_omega":[[{"re":1,"im":0,"kind":"bad","i":1,"j":2}],[]]})"),
        MalformedSpec);
  }
  SUBCASE("d^2 != 0 rejected with offending monomial") {
    // dw3 = -w1^w2 + w2^w~3 breaks d^2 = 0 through the conjugate equation.
    std::string bad = R"({"n":3,"d_omega":[[],[],[
      {"re":-1,"im":0,"kind":"hol","i":1,"j":2},
      {"re":1,"im":0,"kind":"mix","i":2,"j":3}]]})";
    CHECK_THROWS_AS(Model::load(bad), NotIntegrable);
  }
}

TEST_CASE("wedge product") {
  const Model& m = testutil::torus2().model;
  const Algebra& A = m.algebra();
  std::mt19937_64 rng(42);

  SUBCASE("alternation") {
    Form w1 = Form::monomial(A, index_bit(1), 0);
    CHECK(wedge(w1, w1).norm() == 0.0);
  }
  SUBCASE("spec examples") {
    Form w1 = Form::monomial(A, index_bit(1), 0);
    Form w2b = Form::monomial(A, 0, index_bit(2));
    Form w = wedge(w1, w2b);
    CHECK(std::abs(w.coeff(A.id_of(index_bit(1), index_bit(2))) - Complex(1, 0)) < 1e-15);

    Form w2 = Form::monomial(A, index_bit(2), 0);
    Form prod = wedge(w1 + w2, w1 - w2);
    Form expect = Form::monomial(A, index_bit(1) | index_bit(2), 0, Complex(-2, 0));
    CHECK((prod - expect).norm() < 1e-14);
  }
  SUBCASE("graded commutativity and associativity on random pure types") {
    for (int it = 0; it < 50; ++it) {
      int p1 = int(rng() % 3), q1 = int(rng() % 3);
      int p2 = int(rng() % 3), q2 = int(rng() % 3);
      Form a = testutil::random_block_form(A, p1, q1, rng);
      Form b = testutil::random_block_form(A, p2, q2, rng);
      Form ab = wedge(a, b), ba = wedge(b, a);
      double sign = ((p1 + q1) * (p2 + q2)) % 2 == 0 ? 1.0 : -1.0;
      CHECK((ab - ba * sign).norm() < 1e-12);
      Form c = testutil::random_block_form(A, 1, 0, rng);
      CHECK((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).norm() < 1e-12);
    }
  }
}

TEST_CASE("differentials") {
  SUBCASE("torus d(dz) = 0") {
    const Model& m = testutil::torus1().model;
    Form dz = Form::monomial(m.algebra(), index_bit(1), 0);
    CHECK(differential(m, Diff::d, dz).norm() == 0.0);
  }
  SUBCASE("iwasawa del/delbar split") {
    const Model& m = testutil::iwasawa().model;
    const Algebra& A = m.algebra();
    Form w3 = Form::monomial(A, index_bit(3), 0);
    Form expect = Form::monomial(A, index_bit(1) | index_bit(2), 0, Complex(-1, 0));
    CHECK((differential(m, Diff::del, w3) - expect).norm() < 1e-14);
    CHECK(differential(m, Diff::delbar, w3).norm() == 0.0);
  }
  SUBCASE("kodaira-thurston mixed term goes to delbar") {
    const Model& m = testutil::kodaira_thurston().model;
    const Algebra& A = m.algebra();
    Form w2 = Form::monomial(A, index_bit(2), 0);
    Form expect = Form::monomial(A, index_bit(1), index_bit(1));
    CHECK(differential(m, Diff::del, w2).norm() == 0.0);
    CHECK((differential(m, Diff::delbar, w2) - expect).norm() < 1e-14);
  }
  SUBCASE("operator axioms, float") {
    for (const auto* fix : {&testutil::torus1(), &testutil::torus2(), &testutil::torus3(),
                            &testutil::iwasawa(), &testutil::kodaira_thurston()}) {
      const Model& m = fix->model;
      CHECK((m.d() * m.d()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((m.del() * m.del()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((m.delbar() * m.delbar()).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((m.del() * m.delbar() + m.delbar() * m.del()).cwiseAbs().maxCoeff() < 1e-12);
      // d = del + delbar for these models (no anti terms)
      CHECK((m.d() - m.del() - m.delbar()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SUBCASE("operator axioms, exact") {
    for (const auto* fix : {&testutil::iwasawa(), &testutil::kodaira_thurston()}) {
      const Model& m = fix->model;
      CHECK(m.integrability_defect_exact().empty());
      CHECK((m.del_exact() * m.del_exact()).is_zero());
      CHECK((m.delbar_exact() * m.delbar_exact()).is_zero());
      CHECK((m.del_exact() * m.delbar_exact() + m.delbar_exact() * m.del_exact()).is_zero());
    }
  }
  SUBCASE("Leibniz rule on random pure-type pairs") {
    const Model& m = testutil::iwasawa().model;
    const Algebra& A = m.algebra();
    std::mt19937_64 rng(42);
    for (int it = 0; it < 200; ++it) {
      int p1 = int(rng() % 4), q1 = int(rng() % 4);
      int p2 = int(rng() % 4), q2 = int(rng() % 4);
      Form a = testutil::random_block_form(A, p1, q1, rng);
      Form b = testutil::random_block_form(A, p2, q2, rng);
      Form lhs = differential(m, Diff::d, wedge(a, b));
      double sign = (p1 + q1) % 2 == 0 ? 1.0 : -1.0;
      Form rhs = wedge(differential(m, Diff::d, a), b) + wedge(a, differential(m, Diff::d, b)) * sign;
      CHECK((lhs - rhs).norm() < 1e-12);
    }
  }
}

TEST_CASE("conjugation") {
  const Model& m = testutil::iwasawa().model;
  const Algebra& A = m.algebra();
  SUBCASE("generator") {
    Form w1 = Form::monomial(A, index_bit(1), 0);
    Form expect = Form::monomial(A, 0, index_bit(1));
    CHECK((conjugate(w1) - expect).norm() == 0.0);
  }
  SUBCASE("reordering sign") {
    // conj(i w1^w~2) = -i w~1^w2 = +i w2^w~1
    Form f = Form::monomial(A, index_bit(1), index_bit(2), Complex(0, 1));
    Form expect = Form::monomial(A, index_bit(2), index_bit(1), Complex(0, 1));
    CHECK((conjugate(f) - expect).norm() < 1e-15);
  }
  SUBCASE("involution and d-compatibility") {
    std::mt19937_64 rng(7);
    Form f = testutil::random_form(A, rng);
    CHECK((conjugate(conjugate(f)) - f).norm() < 1e-13);
    for (int id = 0; id < A.dim(); ++id) {
      Form b = Form::basis(A, id);
      Form lhs = conjugate(differential(m, Diff::d, b));
      Form rhs = differential(m, Diff::d, conjugate(b));
      CHECK((lhs - rhs).norm() < 1e-13);
    }
  }
}

TEST_CASE("json round trip") {
  const Model& m = testutil::iwasawa().model;
  Model m2 = Model::load(m.to_json());
  CHECK((m.d() - m2.d()).norm() == 0.0);
  CHECK(m2.name() == "iwasawa");
}
