#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ptfem/scalar_basis.hpp"
#include "ptfem/verification.hpp"

using namespace ptfem;

TEST_CASE("polytopal counts") {
  ScalarBasis l3(ScalarFamily::lagrange, 3, ReferenceSimplex::triangle());
  CHECK(l3.size() == 10);  // 3 vertex + 3x2 edge + 1 cell
  CHECK(l3.polytope_functions(Polytope::vertex(0)).size() == 1);
  CHECK(l3.polytope_functions(Polytope::edge(0, 1)).size() == 2);
  CHECK(l3.polytope_functions(Polytope::cell(3)).size() == 1);

  ScalarBasis b1(ScalarFamily::bernstein, 1, ReferenceSimplex::tetrahedron());
  CHECK(b1.size() == 4);

  ScalarBasis l4(ScalarFamily::lagrange, 4, ReferenceSimplex::tetrahedron());
  CHECK(l4.size() == 35);  // 4 vertex + 6x3 edge + 4x3 face + 1 cell
  CHECK(l4.polytope_functions(Polytope::edge(1, 3)).size() == 3);
  CHECK(l4.polytope_functions(Polytope::face(0, 2, 3)).size() == 3);
  CHECK(l4.polytope_functions(Polytope::cell(4)).size() == 1);

  CHECK_THROWS_AS(ScalarBasis(ScalarFamily::lagrange, 0, ReferenceSimplex::triangle()),
                  std::domain_error);
}

TEST_CASE("nodal values") {
  ScalarBasis l1(ScalarFamily::lagrange, 1, ReferenceSimplex::triangle());
  Eigen::VectorXd v = l1.eval(Eigen::Vector2d(0, 0));
  CHECK(v[0] == doctest::Approx(1));
  CHECK(v[1] == doctest::Approx(0));
  CHECK(v[2] == doctest::Approx(0));

  ScalarBasis b2(ScalarFamily::bernstein, 2, ReferenceSimplex::triangle());
  Eigen::VectorXd w = b2.eval(Eigen::Vector2d(0, 0));
  CHECK(w[0] == doctest::Approx(1));
  for (int i = 1; i < b2.size(); ++i) CHECK(w[i] == doctest::Approx(0));

  // Lagrange is nodal on the whole principal lattice
  ScalarBasis l3(ScalarFamily::lagrange, 3, ReferenceSimplex::tetrahedron());
  for (int i = 0; i < l3.size(); ++i) {
    Eigen::VectorXd vals = l3.eval(l3.node(i));
    for (int j = 0; j < l3.size(); ++j)
      CHECK(vals[j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
  }
}

TEST_CASE("partition of unity and gradient sum") {
  for (auto family : {ScalarFamily::lagrange, ScalarFamily::bernstein})
    for (int dim : {2, 3})
      for (int p = 1; p <= 4; ++p) {
        ScalarBasis basis(family, p, ReferenceSimplex::get(dim));
        Eigen::MatrixXd pts = random_interior_points(basis.simplex(), 50, 1234 + p);
        for (int q = 0; q < pts.rows(); ++q) {
          CHECK(basis.eval(pts.row(q)).sum() == doctest::Approx(1.0).epsilon(1e-13));
          CHECK(basis.gradient(pts.row(q)).colwise().sum().norm() ==
                doctest::Approx(0.0).epsilon(1e-11));
        }
      }
}

TEST_CASE("gradients") {
  ScalarBasis l1(ScalarFamily::lagrange, 1, ReferenceSimplex::triangle());
  // the function of the vertex at (1,0) is xi itself
  Eigen::MatrixXd g = l1.gradient(Eigen::Vector2d(0.2, 0.3));
  CHECK(g(2, 0) == doctest::Approx(1));
  CHECK(g(2, 1) == doctest::Approx(0));

  ScalarBasis b2(ScalarFamily::bernstein, 2, ReferenceSimplex::triangle());
  Eigen::MatrixXd gb = b2.gradient(Eigen::Vector2d(1.0 / 3, 1.0 / 3));
  CHECK(gb(0, 0) == doctest::Approx(-2.0 / 3));
  CHECK(gb(0, 1) == doctest::Approx(-2.0 / 3));
}

TEST_CASE("gradient matches central finite differences") {
  const double step = 1e-6;
  for (auto family : {ScalarFamily::lagrange, ScalarFamily::bernstein})
    for (int dim : {2, 3}) {
      ScalarBasis basis(family, 3, ReferenceSimplex::get(dim));
      Eigen::MatrixXd pts = random_interior_points(basis.simplex(), 20, 99);
      for (int q = 0; q < pts.rows(); ++q) {
        Eigen::VectorXd x = pts.row(q);
        Eigen::MatrixXd g = basis.gradient(x);
        for (int d = 0; d < dim; ++d) {
          Eigen::VectorXd xp = x, xm = x;
          xp[d] += step;
          xm[d] -= step;
          Eigen::VectorXd fd = (basis.eval(xp) - basis.eval(xm)) / (2 * step);
          CHECK((fd - g.col(d)).cwiseAbs().maxCoeff() < 1e-6);
        }
      }
    }
}

TEST_CASE("trace vanishing on foreign polytopes") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  for (auto family : {ScalarFamily::lagrange, ScalarFamily::bernstein})
    for (int dim : {2, 3}) {
      ScalarBasis basis(family, 4, ReferenceSimplex::get(dim));
      const auto& s = basis.simplex();
      for (const auto& q : s.polytopes()) {
        if (q.kind == PolytopeKind::cell) continue;
        // 10 random points on the polytope
        for (int rep = 0; rep < 10; ++rep) {
          Eigen::VectorXd bary(q.num_verts());
          for (int k = 0; k < q.num_verts(); ++k) bary[k] = unif(rng);
          bary /= bary.sum();
          Eigen::VectorXd vals = basis.eval(s.polytope_point(q, bary));
          for (int i = 0; i < basis.size(); ++i)
            if (!q.contains(basis.functions()[i].polytope))
              CHECK(std::abs(vals[i]) < 1e-10);
        }
      }
    }
}

TEST_CASE("basis unisolvence") {
  for (auto family : {ScalarFamily::lagrange, ScalarFamily::bernstein})
    for (int dim : {2, 3}) {
      ScalarBasis basis(family, 3, ReferenceSimplex::get(dim));
      Eigen::MatrixXd pts = random_interior_points(basis.simplex(), basis.size(), 41);
      Eigen::MatrixXd mat(basis.size(), basis.size());
      for (int q = 0; q < pts.rows(); ++q) mat.col(q) = basis.eval(pts.row(q));
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
      CHECK(svd.singularValues()(basis.size() - 1) > 1e-8 * svd.singularValues()(0));
    }
}

TEST_CASE("points outside the simplex are rejected") {
  ScalarBasis basis(ScalarFamily::lagrange, 2, ReferenceSimplex::triangle());
  CHECK_THROWS_AS((void)basis.eval(Eigen::Vector2d(0.7, 0.7)), std::domain_error);
  CHECK_THROWS_AS((void)basis.gradient(Eigen::Vector2d(-0.1, 0.2)), std::domain_error);
  CHECK_NOTHROW((void)basis.eval(Eigen::Vector2d(0.5, 0.5)));  // boundary is inside
}
