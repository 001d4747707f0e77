#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ptfem/quadrature.hpp"

using namespace ptfem;

namespace {

// analytic monomial integrals over the reference simplices:
// triangle: xi^a eta^b -> a! b! / (a+b+2)!, tetra: a! b! c! / (a+b+c+3)!
double factorial(int n) {
  double r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

double exact_monomial(int dim, int a, int b, int c) {
  if (dim == 2) return factorial(a) * factorial(b) / factorial(a + b + 2);
  return factorial(a) * factorial(b) * factorial(c) / factorial(a + b + c + 3);
}

double integrate_monomial(const QuadratureRule& rule, int a, int b, int c) {
  double sum = 0;
  for (int q = 0; q < rule.size(); ++q) {
    double v = std::pow(rule.points(q, 0), a) * std::pow(rule.points(q, 1), b);
    if (rule.points.cols() == 3) v *= std::pow(rule.points(q, 2), c);
    sum += rule.weights[q] * v;
  }
  return sum;
}

}  // namespace

TEST_CASE("degree-1 rule is the centroid rule") {
  const auto& r2 = simplex_rule(2, 1);
  REQUIRE(r2.size() == 1);
  CHECK(r2.points(0, 0) == doctest::Approx(1.0 / 3));
  CHECK(r2.points(0, 1) == doctest::Approx(1.0 / 3));
  CHECK(r2.weights[0] == doctest::Approx(0.5));
  const auto& r3 = simplex_rule(3, 1);
  REQUIRE(r3.size() == 1);
  CHECK(r3.weights[0] == doctest::Approx(1.0 / 6));
}

TEST_CASE("weights sum to the reference measure and stay positive") {
  for (int dim : {2, 3})
    for (int deg = 0; deg <= max_quadrature_degree(dim); ++deg) {
      const auto& rule = simplex_rule(dim, deg);
      CHECK(rule.weights.sum() == doctest::Approx(dim == 2 ? 0.5 : 1.0 / 6).epsilon(1e-14));
      CHECK(rule.weights.minCoeff() > 0);
      for (int q = 0; q < rule.size(); ++q) {
        Eigen::VectorXd lam(dim + 1);
        if (dim == 2)
          lam << 1 - rule.points(q, 0) - rule.points(q, 1), rule.points(q, 1), rule.points(q, 0);
        else
          lam << 1 - rule.points.row(q).sum(), rule.points(q, 2), rule.points(q, 1),
              rule.points(q, 0);
        CHECK(lam.minCoeff() >= 0);
      }
    }
}

TEST_CASE("monomial exactness sweep") {
  for (int dim : {2, 3})
    for (int deg = 0; deg <= max_quadrature_degree(dim); ++deg) {
      const auto& rule = simplex_rule(dim, deg);
      for (int a = 0; a <= deg; ++a)
        for (int b = 0; a + b <= deg; ++b) {
          if (dim == 2) {
            double exact = exact_monomial(2, a, b, 0);
            CHECK(integrate_monomial(rule, a, b, 0) ==
                  doctest::Approx(exact).epsilon(1e-13));
          } else {
            for (int c = 0; a + b + c <= deg; ++c) {
              double exact = exact_monomial(3, a, b, c);
              CHECK(integrate_monomial(rule, a, b, c) ==
                    doctest::Approx(exact).epsilon(1e-13));
            }
          }
        }
    }
}

TEST_CASE("tetrahedron first moment") {
  const auto& rule = simplex_rule(3, 2);
  CHECK(integrate_monomial(rule, 1, 0, 0) == doctest::Approx(1.0 / 24));
}

TEST_CASE("degree beyond the table names the maximum") {
  CHECK_THROWS_WITH_AS((void)simplex_rule(2, 15),
                       doctest::Contains("maximum 14"), std::domain_error);
  CHECK_THROWS_WITH_AS((void)simplex_rule(3, 11),
                       doctest::Contains("maximum 10"), std::domain_error);
  CHECK_THROWS_AS((void)simplex_rule(4, 2), std::domain_error);
}

TEST_CASE("Gauss-Legendre on the unit interval") {
  for (int n = 1; n <= 10; ++n) {
    Eigen::VectorXd pts, wts;
    gauss_legendre_01(n, pts, wts);
    CHECK(wts.sum() == doctest::Approx(1.0));
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double sum = 0;
      for (int q = 0; q < n; ++q) sum += wts[q] * std::pow(pts[q], d);
      CHECK(sum == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
  }
}
